#include "chaplygin/measure.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <random>
#include <sstream>

#include "chaplygin/csv.hpp"
#include "chaplygin/errors.hpp"
#include "chaplygin/exact.hpp"

namespace chaplygin {
namespace {

double line_value(double slope, double t) {
  if (std::isinf(slope)) return slope;
  return slope * t;
}

double profile(double z) {
  if (std::abs(z) >= 1.0) return 0.0;
  const double w = 1.0 - z * z;
  return w * w * w;
}

double profile_slope(double z) {
  if (std::abs(z) >= 1.0) return 0.0;
  const double w = 1.0 - z * z;
  return -6.0 * z * w * w;
}

// Sub-intervals of x/t in (-inf, 0] on which every listed field is constant.
std::vector<std::pair<double, double>> common_partition(std::initializer_list<const MeasureField*> fields) {
  std::vector<double> cuts{-kInfinity, 0.0};
  for (const auto* field : fields) {
    for (const auto& w : field->ac) {
      cuts.push_back(std::min(w.slope_lo, 0.0));
      cuts.push_back(std::min(w.slope_hi, 0.0));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.emplace_back(cuts[i], cuts[i + 1]);
  return out;
}

double interior_slope(const std::pair<double, double>& interval) {
  if (std::isinf(interval.first)) return interval.second - 1.0;
  return 0.5 * (interval.first + interval.second);
}

const DiracLine* find_line(const MeasureField& field, const std::string& support) {
  for (const auto& line : field.dirac) {
    if (line.support == support) return &line;
  }
  return nullptr;
}

double initial_line_integral(const TestFunction& phi, const QuadratureOptions& options) {
  const Rect box = phi.support();
  if (!(box.t_lo < 0.0 && box.t_hi > 0.0)) return 0.0;
  return integrate_interval([&](double x) { return phi.value(0.0, x); }, box.x_lo, std::min(box.x_hi, 0.0), options)
      .value;
}

double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

bool nearly_equal(double a, double b, double rel = 1e-12) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

DiracLine wall_line(TimeFunction weight) {
  return DiracLine{"wall", [](double) { return 0.0; }, [](double) { return 0.0; }, std::move(weight), kInfinity};
}

DiracLine ray_line(std::string support, double speed, TimeFunction weight) {
  return DiracLine{std::move(support), [speed](double t) { return speed * t; }, [speed](double) { return speed; },
                   std::move(weight), kInfinity};
}

double density_at_slope(const MeasureField& field, double slope) {
  for (const auto& w : field.ac) {
    if (w.slope_lo < slope && slope < w.slope_hi) return w.density;
  }
  return 0.0;
}

double density_at(const MeasureField& field, double t, double x) {
  if (!(t > 0.0) || !(x < 0.0)) return 0.0;
  return density_at_slope(field, x / t);
}

void validate_field(const MeasureField& field) {
  auto wedges = field.ac;
  for (const auto& w : wedges) {
    if (!(w.slope_lo < w.slope_hi)) throw DomainError("wedge has slope_lo >= slope_hi");
    if (w.slope_hi > 0.0) throw DomainError("wedge leaves the quarter plane x < 0");
  }
  std::sort(wedges.begin(), wedges.end(), [](const auto& l, const auto& r) { return l.slope_lo < r.slope_lo; });
  for (std::size_t i = 0; i + 1 < wedges.size(); ++i) {
    if (wedges[i].slope_hi > wedges[i + 1].slope_lo) throw DomainError("wedges overlap");
  }
}

TestFunction::TestFunction(double t_center, double x_center, double r_t, double r_x)
    : t_center_(t_center), x_center_(x_center), r_t_(r_t), r_x_(r_x) {
  if (!(r_t > 0.0) || !(r_x > 0.0)) throw DomainError("test function radii must be positive");
}

double TestFunction::value(double t, double x) const {
  return profile((t - t_center_) / r_t_) * profile((x - x_center_) / r_x_);
}

double TestFunction::dt(double t, double x) const {
  return profile_slope((t - t_center_) / r_t_) * profile((x - x_center_) / r_x_) / r_t_;
}

double TestFunction::dx(double t, double x) const {
  return profile((t - t_center_) / r_t_) * profile_slope((x - x_center_) / r_x_) / r_x_;
}

Rect TestFunction::support() const {
  return {t_center_ - r_t_, t_center_ + r_t_, x_center_ - r_x_, x_center_ + r_x_};
}

double TestFunction::c1_norm() const {
  const double k = bump_profile_slope_max();
  return std::max({1.0, k / r_t_, k / r_x_});
}

TestFunction make_bump(double t_center, double x_center, double r_t, double r_x) {
  return TestFunction(t_center, x_center, r_t, r_x);
}

double bump_profile_slope_max() { return 96.0 / (25.0 * std::sqrt(5.0)); }

QuadResult pair_ac(const WedgePiece& piece, const Integrand2d& f, const Rect& window,
                   const QuadratureOptions& options) {
  if (piece.density == 0.0) return {};
  const double t0 = std::max(window.t_lo, 0.0);
  const double t1 = window.t_hi;
  const double xl = window.x_lo;
  const double xh = std::min(window.x_hi, 0.0);
  if (!(t1 > t0) || !(xh > xl)) return {};

  // Split the time range wherever a wedge ray crosses a window edge so that
  // the x-limits are linear on every sub-interval.
  std::vector<double> cuts{t0, t1};
  for (double s : {piece.slope_lo, piece.slope_hi}) {
    if (std::isinf(s) || s == 0.0) continue;
    for (double b : {xl, xh}) {
      const double tc = b / s;
      if (tc > t0 && tc < t1) cuts.push_back(tc);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double density = piece.density;
  const Integrand2d weighted = [&](double t, double x) { return density * f(t, x); };
  QuadResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double ta = cuts[i];
    const double tb = cuts[i + 1];
    const double tm = 0.5 * (ta + tb);
    const bool lower_ray = line_value(piece.slope_lo, tm) > xl;
    const bool upper_ray = line_value(piece.slope_hi, tm) < xh;
    const auto lower = [&](double t) { return lower_ray ? piece.slope_lo * t : xl; };
    const auto upper = [&](double t) { return upper_ray ? piece.slope_hi * t : xh; };
    if (!(upper(tm) > lower(tm))) continue;
    total += integrate_trapezoid(weighted, Trapezoid{ta, tb, lower(ta), lower(tb), upper(ta), upper(tb)}, options);
  }
  return total;
}

QuadResult pair_dirac(const DiracLine& line, const Integrand2d& f, const Rect& window,
                      const QuadratureOptions& options) {
  const double t0 = std::max(window.t_lo, 0.0);
  const double t1 = std::min(window.t_hi, line.t_end);
  if (!(t1 > t0) || !line.weight) return {};
  return integrate_interval(
      [&](double t) {
        const double w = line.weight(t);
        if (!std::isfinite(w)) throw QuadratureError("Dirac weight is not locally integrable on the window");
        if (w == 0.0) return 0.0;
        const double slope = line.curve_slope(t);
        return f(t, line.curve(t)) * w * std::sqrt(slope * slope + 1.0);
      },
      t0, t1, options);
}

QuadResult pair_dirac(const DiracLine& line, const TestFunction& phi, const QuadratureOptions& options) {
  return pair_dirac(
      line, [&phi](double t, double x) { return phi.value(t, x); }, phi.support(), options);
}

QuadResult pair(const MeasureField& field, const Integrand2d& f, const Rect& window,
                const QuadratureOptions& options) {
  QuadResult total;
  for (const auto& piece : field.ac) total += pair_ac(piece, f, window, options);
  for (const auto& line : field.dirac) total += pair_dirac(line, f, window, options);
  return total;
}

double mass_residual(const MeasureSolution& sol, const TestFunction& phi, const QuadratureOptions& options) {
  const Rect box = phi.support();
  const Integrand2d dt = [&phi](double t, double x) { return phi.dt(t, x); };
  const Integrand2d dx = [&phi](double t, double x) { return phi.dx(t, x); };
  return pair(sol.density, dt, box, options).value + pair(sol.momentum, dx, box, options).value +
         sol.initial.rho * initial_line_integral(phi, options);
}

double momentum_residual(const MeasureSolution& sol, const TestFunction& phi, const QuadratureOptions& options) {
  const Rect box = phi.support();
  const Integrand2d dt = [&phi](double t, double x) { return phi.dt(t, x); };
  const Integrand2d dx = [&phi](double t, double x) { return phi.dx(t, x); };
  double wall = 0.0;
  if (sol.wall_force) wall = pair_dirac(wall_line(sol.wall_force), phi, options).value;
  return pair(sol.momentum, dt, box, options).value + pair(sol.momentum_flux, dx, box, options).value +
         pair(sol.pressure, dx, box, options).value - wall +
         sol.initial.rho * sol.initial.u * initial_line_integral(phi, options);
}

std::vector<TestFunction> make_test_family(const MeasureSolution& sol, int n_tests, std::uint64_t seed) {
  if (n_tests < 1) throw DomainError("residual suite needs at least one test function");

  std::vector<double> rays;
  for (const auto* field : {&sol.density, &sol.momentum, &sol.pressure}) {
    for (const auto& w : field->ac) {
      for (double s : {w.slope_lo, w.slope_hi}) {
        if (std::isfinite(s) && s < 0.0) rays.push_back(s);
      }
    }
  }
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

  const double t_window = 1.5;
  double steepest = 1.0;
  for (double s : rays) steepest = std::max(steepest, std::abs(s));
  const double x_window = t_window * steepest;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double shift_a = unit(rng);
  const double shift_b = unit(rng);
  std::uint64_t halton_index = 1;
  auto next_point = [&] {
    const double a = std::fmod(halton(halton_index, 2) + shift_a, 1.0);
    const double b = std::fmod(halton(halton_index, 3) + shift_b, 1.0);
    ++halton_index;
    return std::pair{a, b};
  };
  auto radii = [&](int i) {
    const double rt = 0.3 / static_cast<double>(1 << (i % 3));
    const double rx = 0.3 * steepest / static_cast<double>(1 << ((i + i / 3) % 3));
    return std::pair{rt, rx};
  };

  std::vector<TestFunction> family;
  family.reserve(n_tests);
  auto room = [&] { return static_cast<int>(family.size()) < n_tests; };

  for (int k = 0; k < 5 && room(); ++k) {
    const int i = static_cast<int>(family.size());
    auto [rt, rx] = radii(i);
    auto [a, b] = next_point();
    (void)b;
    family.emplace_back(0.05 + a * (t_window - 0.05), -0.5 * rx, rt, rx);
  }
  for (int k = 0; k < 2 && room(); ++k) {
    const int i = static_cast<int>(family.size());
    auto [rt, rx] = radii(i);
    auto [a, b] = next_point();
    (void)a;
    family.emplace_back(0.5 * rt, -b * x_window, rt, rx);
  }
  for (double s : rays) {
    for (int k = 0; k < 2 && room(); ++k) {
      const double r = 0.3 / static_cast<double>(1 << k);
      auto [a, b] = next_point();
      (void)b;
      const double tc = 0.4 + 0.8 * a;
      family.emplace_back(tc, s * tc, r, r);
    }
  }
  while (room()) {
    const int i = static_cast<int>(family.size());
    auto [rt, rx] = radii(i);
    auto [a, b] = next_point();
    family.emplace_back(a * t_window, -b * x_window, rt, rx);
  }
  return family;
}

ResidualReport residual_suite(const MeasureSolution& sol, int n_tests, std::uint64_t seed, unsigned jobs,
                              const QuadratureOptions& options) {
  const auto family = make_test_family(sol, n_tests, seed);
  ResidualReport report;
  report.rows.resize(family.size());

  auto evaluate_range = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < family.size(); i += stride) {
      const auto& phi = family[i];
      const double scale = phi.c1_norm() * phi.support_area();
      report.rows[i] = ResidualRow{static_cast<int>(i),
                                   phi.t_center(),
                                   phi.x_center(),
                                   phi.r_t(),
                                   phi.r_x(),
                                   mass_residual(sol, phi, options) / scale,
                                   momentum_residual(sol, phi, options) / scale};
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, family.size());
  if (workers == 1) {
    evaluate_range(0, 1);
  } else {
    std::vector<std::future<void>> tasks;
    for (std::size_t w = 0; w < workers; ++w) {
      tasks.push_back(std::async(std::launch::async, evaluate_range, w, workers));
    }
    for (auto& task : tasks) task.get();
  }

  double sum_mass = 0.0;
  double sum_momentum = 0.0;
  for (const auto& row : report.rows) {
    report.max_mass = std::max(report.max_mass, std::abs(row.mass_residual));
    report.max_momentum = std::max(report.max_momentum, std::abs(row.momentum_residual));
    sum_mass += row.mass_residual * row.mass_residual;
    sum_momentum += row.momentum_residual * row.momentum_residual;
  }
  const double n = static_cast<double>(report.rows.size());
  report.rms_mass = std::sqrt(sum_mass / n);
  report.rms_momentum = std::sqrt(sum_momentum / n);
  return report;
}

void write_residual_csv(const ResidualReport& report, std::ostream& out) {
  out << "test_id,t_center,x_center,r_t,r_x,mass_residual,momentum_residual\n";
  for (const auto& row : report.rows) {
    write_csv_row(out, {std::to_string(row.test_id), format_double(row.t_center), format_double(row.x_center),
                        format_double(row.r_t), format_double(row.r_x), format_double(row.mass_residual),
                        format_double(row.momentum_residual)});
  }
}

RnReport rn_check(const MeasureSolution& sol) {
  RnReport report;
  auto fail = [&](std::string message) {
    report.ok = false;
    report.failures.push_back(std::move(message));
  };
  auto wedge_name = [](const std::pair<double, double>& iv) {
    std::ostringstream s;
    s << "wedge (" << iv.first << ", " << iv.second << ")";
    return s.str();
  };

  for (const auto& iv : common_partition({&sol.density, &sol.momentum, &sol.momentum_flux})) {
    const double xi = interior_slope(iv);
    const double rho = density_at_slope(sol.density, xi);
    const double m = density_at_slope(sol.momentum, xi);
    const double n = density_at_slope(sol.momentum_flux, xi);
    VelocityPiece piece{iv.first, iv.second, 0.0, rho > 0.0};
    if (rho < 0.0) fail(wedge_name(iv) + ": density measure is negative");
    if (rho == 0.0 && m != 0.0) fail(wedge_name(iv) + ": momentum is not absolutely continuous w.r.t. density");
    if (m == 0.0 && n != 0.0) fail(wedge_name(iv) + ": momentum flux is not absolutely continuous w.r.t. momentum");
    if (rho > 0.0) {
      piece.u = m / rho;
      if (m != 0.0 && !nearly_equal(n / m, piece.u)) {
        fail(wedge_name(iv) + ": dm/drho and dn/dm differ");
      }
    }
    report.velocity.push_back(piece);
  }

  const double samples[] = {0.25, 0.5, 1.0, 2.0};
  for (const auto& line : sol.momentum.dirac) {
    if (!find_line(sol.density, line.support)) {
      fail("Dirac line '" + line.support + "' carries momentum but no density");
    }
  }
  for (const auto& line : sol.momentum_flux.dirac) {
    if (!find_line(sol.momentum, line.support)) {
      fail("Dirac line '" + line.support + "' carries momentum flux but no momentum");
    }
  }
  for (const auto& line : sol.density.dirac) {
    const DiracLine* mom = find_line(sol.momentum, line.support);
    const DiracLine* flux = find_line(sol.momentum_flux, line.support);
    double u = 0.0;
    if (mom) {
      const double t = samples[2];
      const double w = line.weight(t);
      u = w != 0.0 ? mom->weight(t) / w : 0.0;
    }
    for (double t : samples) {
      const double w = line.weight(t);
      const double wm = mom ? mom->weight(t) : 0.0;
      const double wn = flux ? flux->weight(t) : 0.0;
      if (w == 0.0 && wm != 0.0) fail("Dirac line '" + line.support + "': momentum weight where density weight is 0");
      if (w != 0.0 && !nearly_equal(wm, u * w)) fail("Dirac line '" + line.support + "': velocity not constant");
      if (!nearly_equal(wn, u * wm)) fail("Dirac line '" + line.support + "': flux weight differs from u * momentum");
    }
    report.dirac_velocity.push_back({line.support, u});
  }
  return report;
}

EosEntropyReport eos_entropy_check(const MeasureSolution& sol) {
  EosEntropyReport report;
  const double a = eos_constant(sol.mach);
  auto fail = [&](std::string message) {
    report.ok = false;
    report.failures.push_back(std::move(message));
  };

  const auto parts = common_partition({&sol.density, &sol.momentum, &sol.pressure});
  std::vector<State> states;
  std::vector<bool> occupied;
  for (const auto& iv : parts) {
    const double xi = interior_slope(iv);
    const double rho = density_at_slope(sol.density, xi);
    const double p = density_at_slope(sol.pressure, xi);
    const double m = density_at_slope(sol.momentum, xi);
    WedgeEosCheck check{iv.first, iv.second, rho, p, 0.0, true};
    if (rho > 0.0) {
      check.expected_pressure = a == 0.0 ? 0.0 : -a / rho;
      check.ok = nearly_equal(p, check.expected_pressure);
    } else {
      // Only the pressureless limit may carry an empty wedge.
      check.expected_pressure = 0.0;
      check.ok = a == 0.0 && p == 0.0;
    }
    if (!check.ok) {
      std::ostringstream s;
      s << "EOS violated on wedge (" << iv.first << ", " << iv.second << "): rho = " << rho << ", p = " << p
        << ", expected " << check.expected_pressure;
      fail(s.str());
    }
    report.wedges.push_back(check);
    states.push_back(State{rho, rho > 0.0 ? m / rho : 0.0});
    occupied.push_back(rho > 0.0);
  }

  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!occupied[i] || !occupied[i + 1] || states[i] == states[i + 1]) continue;
    InterfaceCheck check;
    check.slope = parts[i].second;
    check.left = states[i];
    check.right = states[i + 1];
    const auto rh = rh_residual(check.left, check.right, check.slope, a);
    check.rh_mass = rh.mass;
    check.rh_momentum = rh.momentum;
    const auto lax = lax_admissible(check.left, check.right, check.slope, a);
    check.lax_admissible = lax.admissible;
    check.family = lax.family;
    if (!lax.admissible) {
      std::ostringstream s;
      s << "entropy condition violated across x/t = " << check.slope;
      fail(s.str());
    }
    report.interfaces.push_back(check);
  }

  if (sol.wall_force) {
    for (int k = 1; k <= 100; ++k) {
      if (sol.wall_force(0.1 * k) < 0.0) {
        report.wall_force_nonnegative = false;
        break;
      }
    }
  }
  return report;
}

}  // namespace chaplygin
