// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --only 7 --only 8
//   acceptance --out DIR       also write the CSVs of the finite-volume runs
//
// Exit status is 0 only when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chaplygin/exact.hpp"
#include "chaplygin/fvm.hpp"
#include "chaplygin/measure.hpp"

using namespace chaplygin;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

std::string fix(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

std::filesystem::path g_out_dir;

void maybe_write(const std::string& name, const std::function<void(std::ostream&)>& writer) {
  if (g_out_dir.empty()) return;
  std::filesystem::create_directories(g_out_dir);
  std::ofstream out(g_out_dir / name);
  writer(out);
}

FvConfig acceptance_config(double mach, Direction dir, int cells) {
  FvConfig c;
  c.mach = mach;
  c.direction = dir;
  c.n_cells = cells;
  c.t_end = 1.0;
  c.domain_length = 1.1 * required_domain_length(mach, dir, c.t_end);
  c.snapshot_times = {0.25, 0.5, 0.75, 1.0};
  return c;
}

// Runs are shared between criteria 7-10 within one process.
const FvRun& cached_run(double mach, Direction dir, int cells) {
  static std::map<std::tuple<double, int, int>, FvRun> cache;
  const auto key = std::make_tuple(mach, static_cast<int>(dir), cells);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, run(acceptance_config(mach, dir, cells))).first;
    const std::string stem = std::string(to_string(dir)) + "_M" + format_mach(mach) + "_N" + std::to_string(cells);
    maybe_write(stem + "_snapshots.csv", [&](std::ostream& o) { write_snapshot_csv(it->second, o); });
    maybe_write(stem + "_diagnostics.csv", [&](std::ostream& o) { write_diagnostics_csv(it->second, o); });
  }
  return it->second;
}

constexpr int kFineCells = 1600;
const int kConvergenceCells[] = {200, 400, 800, 1600};

void criterion1(Outcome& o) {
  double worst_rho = 0.0, worst_sigma = 0.0, worst_rh = 0.0;
  int lax_failures = 0;
  for (int k = 1; k <= 50; ++k) {
    const double m = k / 51.0;
    const ShockSolution s = solve_advancing_subsonic(m);
    const double a = eos_constant(m);
    worst_rho = std::max(worst_rho, std::abs(s.downstream.rho - 1.0 / (1.0 - m)) * (1.0 - m));
    worst_sigma = std::max(worst_sigma, std::abs(s.sigma - (1.0 - 1.0 / m)) / std::abs(1.0 - 1.0 / m));
    const auto rh = rh_residual(s.upstream, s.downstream, s.sigma, a);
    worst_rh = std::max({worst_rh, std::abs(rh.mass), std::abs(rh.momentum)});
    if (!lax_admissible(s.upstream, s.downstream, s.sigma, a).admissible) ++lax_failures;
  }
  o.detail << "50 Mach numbers in (0,1): max rel err rho1 " << sci(worst_rho) << ", sigma " << sci(worst_sigma)
           << ", max RH residual " << sci(worst_rh) << ", Lax failures " << lax_failures;
  o.require(worst_rho < 1e-12, "rho1 = 1/(1-M0)");
  o.require(worst_sigma < 1e-12, "sigma = 1-1/M0");
  o.require(worst_rh < 1e-12, "RH residual < 1e-12");
  o.require(lax_failures == 0, "Lax admissibility");
}

void criterion2(Outcome& o) {
  const std::pair<double, double> cases[] = {{1.0, 2.0}, {2.0, 1.5}, {10.0, 1.1}};
  o.detail << "implied shock speeds:";
  for (auto [m, expect] : cases) {
    const NonexistenceReport r = prove_nonexistence(m);
    o.detail << " M0=" << format_mach(m) << " -> " << fix(r.implied_sigma, 15);
    o.require(!r.shock_exists && r.implied_sigma > 0.0, "sigma > 0 at M0 = " + format_mach(m));
    o.require(std::abs(r.implied_sigma - expect) < 1e-12, "sigma = " + fix(expect) + " at M0 = " + format_mach(m));
  }
}

void criterion3(Outcome& o) {
  const std::pair<double, double> cases[] = {{1.0, 0.0}, {2.0, 0.75}, {4.0, 0.9375}, {kInfinity, 1.0}};
  o.detail << "w_p:";
  for (auto [m, expect] : cases) {
    const double w = solve_advancing_supersonic(m).w_p;
    o.detail << " M0=" << format_mach(m) << " -> " << fix(w, 17);
    o.require(w == expect, "w_p exactly " + fix(expect) + " at M0 = " + format_mach(m));
  }
}

void criterion4(Outcome& o) {
  const double r1 = solve_receding(1.0).downstream.rho;
  const double r3 = solve_receding(3.0).downstream.rho;
  const ContactWaveSolution inf = solve_receding(kInfinity);
  o.detail << "rho1(1) = " << fix(r1, 17) << ", rho1(3) = " << fix(r3, 17) << ", rho1(inf) = " << inf.downstream.rho
           << (inf.limit_vacuum ? " (limit)" : "");
  o.require(std::abs(r1 - 0.5) < 1e-15, "rho1(1) = 1/2");
  o.require(std::abs(r3 - 0.25) < 1e-15, "rho1(3) = 1/4");
  o.require(inf.downstream.rho == 0.0 && inf.limit_vacuum, "rho1(inf) = 0 as a limit");

  // sigma -> -1: |sigma + 1| = 1/M0 decreases along a geometric sequence.
  double previous = kInfinity;
  bool approaching = true;
  for (int k = 0; k <= 12; ++k) {
    const double gap = std::abs(solve_receding(std::pow(10.0, k)).sigma + 1.0);
    approaching = approaching && gap < previous;
    previous = gap;
  }
  o.detail << ", |sigma+1| at M0=1e12 " << sci(previous) << ", sigma(inf) = " << inf.sigma;
  o.require(approaching && previous < 1e-11 && inf.sigma == -1.0, "sigma -> -1");

  double min_rho = kInfinity;
  for (int k = 0; k <= 300; ++k) {
    const double m = std::pow(10.0, -3.0 + 15.0 * k / 300.0);
    min_rho = std::min(min_rho, solve_receding(m).downstream.rho * (m + 1.0));
  }
  o.detail << ", min rho1*(M0+1) over M0 in [1e-3,1e12] " << fix(min_rho, 15);
  o.require(min_rho > 0.0 && std::abs(min_rho - 1.0) < 1e-12, "positive density for finite M0");
}

struct MeasureCase {
  const char* label;
  double mach;
  Direction direction;
};

const MeasureCase kMeasureCases[] = {{"(a) M0=0.5 adv", 0.5, Direction::advancing},
                                     {"(b) M0=1 adv", 1.0, Direction::advancing},
                                     {"(c) M0=2 adv", 2.0, Direction::advancing},
                                     {"(d) M0=inf adv", kInfinity, Direction::advancing},
                                     {"(e) M0=1 rec", 1.0, Direction::receding}};

void criterion5(Outcome& o) {
  for (const auto& c : kMeasureCases) {
    const ResidualReport r = residual_suite(as_measure(solve(c.mach, c.direction)), 20, 1);
    o.detail << c.label << ": mass " << sci(r.max_mass) << " momentum " << sci(r.max_momentum) << "; ";
    o.require(r.max_mass < 1e-6 && r.max_momentum < 1e-6, std::string(c.label) + " below 1e-6");
  }
}

void criterion6(Outcome& o) {
  for (const auto& c : kMeasureCases) {
    MeasureSolution m = as_measure(solve(c.mach, c.direction));
    const auto base = m.wall_force;
    m.wall_force = [base](double t) { return base(t) + 0.1; };
    const double got = residual_suite(m, 20, 1).max_normalized();
    o.detail << c.label << " w_p+0.1: " << sci(got) << "; ";
    o.require(got > 1e-3, std::string(c.label) + " w_p perturbation detected");
  }
  for (const auto& c : kMeasureCases) {
    PistonSolution s = solve(c.mach, c.direction);
    if (auto* shock = std::get_if<ShockSolution>(&s)) {
      shock->downstream.rho *= 1.01;
    } else if (auto* contact = std::get_if<ContactWaveSolution>(&s)) {
      contact->downstream.rho *= 1.01;
    } else {
      continue;  // no rho1 behind a concentration
    }
    const double got = residual_suite(as_measure(s), 20, 1).max_normalized();
    o.detail << c.label << " rho1*1.01: " << sci(got) << "; ";
    o.require(got > 1e-3, std::string(c.label) + " rho1 perturbation detected");
  }
}

void criterion7(Outcome& o) {
  const FvRun& r = cached_run(0.5, Direction::advancing, kFineCells);
  const Snapshot& s = r.snapshots.back();
  const double dx = s.dx;
  const double position = discontinuity_position(s, 1.0);
  double plateau = 0.0;
  int count = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    if (s.x_center[i] > -0.9 && s.x_center[i] < 0.0) {
      plateau += s.rho[i];
      worst = std::max(worst, std::abs(s.rho[i] - 2.0) / 2.0);
      ++count;
    }
  }
  plateau /= count;
  o.detail << "N=1600: shock at " << fix(position, 8) << " (" << fix(std::abs(position + 1.0) / dx, 3)
           << " dx from -1), plateau " << fix(plateau, 8) << ", max rel dev on (-0.9,0) " << sci(worst);
  o.require(std::abs(position + 1.0) <= 2.0 * dx, "shock within 2 dx of x = -1");
  o.require(std::abs(plateau - 2.0) <= 0.02, "downstream density within 1% of 2");

  FvConfig c = acceptance_config(0.5, Direction::advancing, kFineCells);
  c.snapshot_times.clear();
  const ConvergenceReport conv = convergence_study(c, kConvergenceCells, 2);
  o.detail << "; L1 errors";
  for (const auto& row : conv.rows) o.detail << " " << sci(row.l1_error);
  o.detail << ", fitted order " << fix(conv.fitted_order, 4);
  maybe_write("convergence_M0.5.csv", [&](std::ostream& out) { write_convergence_csv(conv, out); });
  o.require(conv.monotone, "monotone errors");
  o.require(conv.fitted_order >= 0.7 && conv.fitted_order <= 1.1, "L1 order in [0.7, 1.1]");
}

void criterion8(Outcome& o) {
  const FvRun& r = cached_run(2.0, Direction::advancing, kFineCells);
  const double slope = layer_mass_slope(r, 0.2, 1.0);
  const double force = wall_force(r);
  o.detail << "N=1600: layer mass slope on [0.2,1] " << fix(slope, 6) << ", wall force " << fix(force, 6)
           << " (w_p = 0.75)";
  o.require(std::abs(slope - 1.0) <= 0.05, "slope 1 +- 5%");
  o.require(std::abs(force - 0.75) <= 0.075, "wall force 0.75 +- 10%");
}

void criterion9(Outcome& o) {
  const double force = wall_force(cached_run(1.0, Direction::advancing, kFineCells));
  o.detail << "N=1600: wall force " << sci(force);
  o.require(std::abs(force) <= 0.05, "|wall force| <= 0.05");
}

void criterion10(Outcome& o) {
  struct RunKey {
    double mach;
    Direction dir;
    int cells;
  };
  std::vector<RunKey> runs{{0.5, Direction::advancing, kFineCells},
                         {2.0, Direction::advancing, kFineCells},
                         {1.0, Direction::advancing, kFineCells}};
  for (int n : kConvergenceCells) {
    if (n != kFineCells) runs.push_back({0.5, Direction::advancing, n});
  }
  for (double m : {1.0, 4.0, 16.0}) runs.push_back({m, Direction::receding, kFineCells});

  double worst_defect = 0.0;
  double min_rho = kInfinity;
  for (const auto& s : runs) {
    const FvRun& r = cached_run(s.mach, s.dir, s.cells);
    worst_defect = std::max(worst_defect, r.max_mass_defect);
    min_rho = std::min(min_rho, r.min_density);
    if (s.dir == Direction::receding) {
      const double floor = 0.9 / (s.mach + 1.0);
      o.detail << "receding M0=" << format_mach(s.mach) << " min rho " << fix(r.min_density, 6) << "; ";
      o.require(r.min_density >= floor, "no vacuum: min rho >= 0.9/(M0+1) at M0 = " + format_mach(s.mach));
    }
  }
  o.detail << runs.size() << " runs: max mass defect per step " << sci(worst_defect) << ", min rho "
           << fix(min_rho, 6);
  o.require(worst_defect < 1e-12, "mass defect < 1e-12");
  o.require(min_rho > 0.0, "rho > 0");
}

const std::map<int, std::pair<const char*, void (*)(Outcome&)>> kCriteria{
    {1, {"subsonic shock formulas", criterion1}},
    {2, {"nonexistence of a shock for M0 >= 1", criterion2}},
    {3, {"wall force weights", criterion3}},
    {4, {"receding piston, no vacuum", criterion4}},
    {5, {"measure identities", criterion5}},
    {6, {"falsification of perturbed solutions", criterion6}},
    {7, {"finite volume, subsonic shock", criterion7}},
    {8, {"finite volume, concentration growth", criterion8}},
    {9, {"finite volume, sonic piston force", criterion9}},
    {10, {"finite volume, conservation and positivity", criterion10}},
};

int usage() {
  std::cerr << "usage: acceptance [--only N]... [--out DIR]\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      const int n = std::atoi(argv[++i]);
      if (!kCriteria.count(n)) return usage();
      selected.insert(n);
    } else if (arg == "--out" && i + 1 < argc) {
      g_out_dir = argv[++i];
    } else {
      return usage();
    }
  }
  if (selected.empty()) {
    for (const auto& [n, _] : kCriteria) selected.insert(n);
  }

  int failed = 0;
  for (int n : selected) {
    const auto& [title, check] = kCriteria.at(n);
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << n << " " << title << ": " << o.detail.str() << " ("
              << fix(seconds, 3) << " s)" << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
