#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "chaplygin/csv.hpp"
#include "chaplygin/errors.hpp"
#include "chaplygin/exact.hpp"
#include "chaplygin/fvm.hpp"
#include "chaplygin/measure.hpp"
#include "chaplygin/serialize.hpp"
#include "output.hpp"

namespace chaplygin::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kVerifyTolerance = 1e-6;

struct Common {
  std::string mach = "";
  bool advancing = false;
  bool receding = false;
  std::string out = "out";
  std::uint64_t seed = 1;
  unsigned jobs = 1;

  Direction direction() const { return receding ? Direction::receding : Direction::advancing; }
};

void add_direction(CLI::App* cmd, Common& c) {
  auto* adv = cmd->add_flag("--advancing", c.advancing, "Piston moves into the gas (default)");
  auto* rec = cmd->add_flag("--receding", c.receding, "Piston moves away from the gas");
  adv->excludes(rec);
}

json mach_json(double mach) { return std::isinf(mach) ? json("inf") : json(mach); }

std::string fmt(double v) { return format_double(v); }

class Invocation {
 public:
  Invocation(std::string command, const std::vector<std::string>& args)
      : start_(std::chrono::steady_clock::now()) {
    manifest_.command = std::move(command);
    manifest_.argv = args;
  }

  void set_config(const json& config) { manifest_.config_json = config.dump(); }

  void write(const fs::path& dir, const std::string& name, const std::string& content) {
    const fs::path path = dir / name;
    write_file_atomically(path, content);
    manifest_.outputs.push_back(path.string());
  }

  void finish(const fs::path& dir, int exit_code) {
    manifest_.exit_code = exit_code;
    manifest_.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    write_file_atomically(dir / "manifest.json", manifest_to_json(manifest_));
  }

 private:
  std::chrono::steady_clock::time_point start_;
  RunManifest manifest_;
};

void print_summary(const PistonSolution& solution, std::ostream& out) {
  const auto s = summarize(solution);
  out << "regime: " << to_string(s.regime) << "\n";
  out << "mach:   " << format_mach(s.mach) << "\n";
  if (const auto* shock = std::get_if<ShockSolution>(&solution)) {
    out << "shock:  x = " << shock->sigma << " t, rho1 = " << shock->downstream.rho
        << ", p1 = " << pressure(shock->downstream.rho, eos_constant(shock->mach)) << "\n";
  } else if (const auto* contact = std::get_if<ContactWaveSolution>(&solution)) {
    out << "wave:   x = " << contact->sigma << " t, rho1 = " << contact->downstream.rho
        << (contact->limit_vacuum ? " (vacuum limit)" : "") << "\n";
  } else if (const auto* conc = std::get_if<ConcentrationSolution>(&solution)) {
    out << "dirac:  w_rho(t) = " << conc->w_rho_slope << " t on x = 0, w_p = " << conc->w_p << "\n";
  }
}

int cmd_solve(const Common& c, Invocation& inv, std::ostream& out) {
  const double mach = parse_mach(c.mach);
  inv.set_config({{"mach", mach_json(mach)}, {"direction", to_string(c.direction())}, {"out", c.out}});
  const PistonSolution solution = solve(mach, c.direction());
  inv.write(c.out, "solution.json", solution_to_json(solution) + "\n");
  print_summary(solution, out);
  inv.finish(c.out, kSuccess);
  return kSuccess;
}

struct VerifyOptions {
  int n_tests = 20;
  double perturb_wp = 0.0;
  double perturb_rho = 0.0;
  std::string convention = "pressure_trace";
};

WallForceConvention parse_convention(const std::string& text) {
  if (text == "pressure_trace") return WallForceConvention::pressure_trace;
  if (text == "zero") return WallForceConvention::zero;
  if (text == "negated_trace") return WallForceConvention::negated_trace;
  throw ConfigError("convention", "expected pressure_trace, zero or negated_trace");
}

int cmd_verify(const Common& c, const VerifyOptions& v, Invocation& inv, std::ostream& out) {
  const double mach = parse_mach(c.mach);
  if (v.n_tests < 1) throw ConfigError("tests", "must be at least 1");
  inv.set_config({{"mach", mach_json(mach)},
                  {"direction", to_string(c.direction())},
                  {"tests", v.n_tests},
                  {"seed", c.seed},
                  {"jobs", c.jobs},
                  {"perturb_wp", v.perturb_wp},
                  {"perturb_rho", v.perturb_rho},
                  {"convention", v.convention},
                  {"tolerance", kVerifyTolerance},
                  {"out", c.out}});

  PistonSolution solution = solve(mach, c.direction());
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConcentrationSolution>) {
          s.w_rho_slope *= 1.0 + v.perturb_rho;
        } else {
          s.downstream.rho *= 1.0 + v.perturb_rho;
        }
      },
      solution);
  MeasureSolution measure = as_measure(solution, parse_convention(v.convention));
  if (v.perturb_wp != 0.0) {
    auto base = measure.wall_force;
    const double delta = v.perturb_wp;
    measure.wall_force = [base, delta](double t) { return base(t) + delta; };
  }

  const ResidualReport report = residual_suite(measure, v.n_tests, c.seed, c.jobs);
  std::ostringstream csv;
  write_residual_csv(report, csv);
  inv.write(c.out, "residuals.csv", csv.str());

  const bool passed = report.max_normalized() < kVerifyTolerance;
  out << "regime: " << to_string(regime_of(solution)) << ", mach " << format_mach(mach) << "\n";
  out << std::scientific << std::setprecision(3);
  out << "mass residual:     max " << report.max_mass << ", rms " << report.rms_mass << "\n";
  out << "momentum residual: max " << report.max_momentum << ", rms " << report.rms_momentum << "\n";
  out << (passed ? "verified" : "NOT verified") << " (tolerance " << kVerifyTolerance << ")\n";
  const int code = passed ? kSuccess : kVerificationFailed;
  inv.finish(c.out, code);
  return code;
}

struct SimulateOptions {
  std::string config_path;
  int n_cells = 0;
  double t_end = 0.0;
  double cfl = 0.0;
  double domain_length = 0.0;
  std::string flux;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cmd_simulate(const Common& c, const SimulateOptions& s, Invocation& inv,
                 std::ostream& out) {
  FvConfig config = fv_config_from_json(read_text(s.config_path));
  if (!c.mach.empty()) config.mach = parse_mach(c.mach);
  if (c.advancing || c.receding) config.direction = c.direction();
  if (s.n_cells != 0) config.n_cells = s.n_cells;
  if (s.t_end != 0.0) config.t_end = s.t_end;
  if (s.cfl != 0.0) config.cfl = s.cfl;
  if (s.domain_length != 0.0) config.domain_length = s.domain_length;
  if (!s.flux.empty()) config.flux = parse_flux_kind(s.flux);
  validate(config);

  json echo = json::parse(fv_config_to_json(config));
  echo["config_file"] = s.config_path;
  echo["out"] = c.out;
  inv.set_config(echo);

  const FvRun result = run(config);
  std::ostringstream snapshots;
  write_snapshot_csv(result, snapshots);
  std::ostringstream diagnostics;
  write_diagnostics_csv(result, diagnostics);
  inv.write(c.out, "snapshots.csv", snapshots.str());
  inv.write(c.out, "diagnostics.csv", diagnostics.str());

  const auto& last = result.diagnostics.back();
  out << "steps: " << result.steps << ", t = " << last.t << "\n";
  out << "final layer mass: " << last.layer_mass << "\n";
  out << "wall force (second-half average): " << wall_force(result) << "\n";
  out << "max mass defect per step: " << result.max_mass_defect << "\n";
  out << "min density: " << result.min_density << "\n";
  inv.finish(c.out, kSuccess);
  return kSuccess;
}

std::vector<double> parse_mach_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) values.push_back(parse_mach(item));
  }
  if (values.empty()) throw ConfigError("machs", "empty list");
  return values;
}

std::vector<double> parse_mach_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("range", "expected start:stop:step");
  const double start = parse_mach(parts[0]);
  const double stop = parse_mach(parts[1]);
  const double step = parse_mach(parts[2]);
  if (std::isinf(start) || std::isinf(stop) || std::isinf(step) || stop < start) {
    throw ConfigError("range", "need finite start <= stop and a finite positive step");
  }
  std::vector<double> values;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long k = 0; k <= count; ++k) values.push_back(start + static_cast<double>(k) * step);
  return values;
}

int cmd_sweep(const Common& c, const std::string& machs, const std::string& range,
              Invocation& inv, std::ostream& out) {
  std::vector<double> values;
  if (!machs.empty()) {
    values = parse_mach_list(machs);
  } else if (!range.empty()) {
    values = parse_mach_range(range);
  } else {
    throw ConfigError("machs", "give --machs or --range");
  }

  json list = json::array();
  for (double m : values) list.push_back(mach_json(m));
  inv.set_config({{"machs", list}, {"direction", to_string(c.direction())}, {"jobs", c.jobs}, {"out", c.out}});

  std::vector<SolutionSummary> rows(values.size());
  const std::size_t workers = std::clamp<std::size_t>(c.jobs, 1, values.size());
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < values.size(); k += workers) rows[k] = summarize(solve(values[k], c.direction()));
    }));
  }
  for (auto& t : tasks) t.get();

  std::ostringstream csv;
  csv << "mach,regime,rho1,sigma,w_p\n";
  for (const auto& r : rows) {
    write_csv_row(csv, {format_mach(r.mach), to_string(r.regime), fmt(r.rho1), fmt(r.sigma), fmt(r.w_p)});
  }
  inv.write(c.out, "sweep.csv", csv.str());
  out << "wrote " << rows.size() << " rows to " << (fs::path(c.out) / "sweep.csv").string() << "\n";
  inv.finish(c.out, kSuccess);
  return kSuccess;
}

struct ConvergenceOptions {
  std::string cells = "200,400,800,1600";
  double t_end = 1.0;
  double domain_length = 0.0;
  double cfl = 0.45;
  std::string flux = "hll";
  double min_order = 0.7;
  double max_order = 1.1;
};

int cmd_convergence(const Common& c, const ConvergenceOptions& o, Invocation& inv,
                    std::ostream& out) {
  FvConfig config;
  config.mach = parse_mach(c.mach);
  config.direction = c.direction();
  config.t_end = o.t_end;
  config.cfl = o.cfl;
  config.flux = parse_flux_kind(o.flux);
  config.domain_length = o.domain_length > 0.0
                             ? o.domain_length
                             : 1.1 * required_domain_length(config.mach, config.direction, config.t_end);
  std::vector<int> cells;
  {
    std::stringstream in(o.cells);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        cells.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw ConfigError("cells", "cannot parse '" + item + "'");
      }
    }
  }
  for (int n : cells) {
    config.n_cells = n;
    validate(config);
  }

  json echo = json::parse(fv_config_to_json(config));
  echo.erase("n_cells");
  echo["cells"] = cells;
  echo["min_order"] = o.min_order;
  echo["max_order"] = o.max_order;
  echo["out"] = c.out;
  inv.set_config(echo);

  const ConvergenceReport report = convergence_study(config, cells, c.jobs);
  std::ostringstream csv;
  write_convergence_csv(report, csv);
  inv.write(c.out, "convergence.csv", csv.str());

  for (const auto& row : report.rows) {
    out << "N = " << row.n_cells << ": L1 = " << row.l1_error << ", order = " << row.order << "\n";
  }
  bool passed = true;
  if (report.exact) {
    out << "errors at rounding level on every grid\n";
  } else {
    out << "fitted order: " << report.fitted_order << " (accepted [" << o.min_order << ", " << o.max_order << "])\n";
    if (!report.monotone) out << "warning: errors do not decrease monotonically\n";
    passed = report.monotone && report.fitted_order >= o.min_order && report.fitted_order <= o.max_order;
  }
  const int code = passed ? kSuccess : kVerificationFailed;
  inv.finish(c.out, code);
  return code;
}

template <class F>
int dispatch(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: config: field '" << e.field() << "': " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: domain: " << e.what() << "\n";
    return kUsageError;
  } catch (const RegimeError& e) {
    err << "error: regime: " << e.what() << "\n";
    return kUsageError;
  } catch (const QuadratureError& e) {
    err << "error: quadrature: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const NumericalError& e) {
    err << "error: numerical: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chaplygin-gas piston problem: exact solutions, measure-solution checks and finite-volume runs"};
  app.require_subcommand(1);

  Common common;
  VerifyOptions verify;
  SimulateOptions simulate;
  ConvergenceOptions convergence;
  std::string sweep_machs;
  std::string sweep_range;

  auto* solve_cmd = app.add_subcommand("solve", "Closed-form solution for one piston Mach number");
  solve_cmd->add_option("--mach", common.mach, "Piston Mach number (> 0 or 'inf')")->required();
  add_direction(solve_cmd, common);
  solve_cmd->add_option("--out", common.out, "Output directory");

  auto* verify_cmd = app.add_subcommand("verify", "Check the weak mass/momentum identities of the exact solution");
  verify_cmd->add_option("--mach", common.mach, "Piston Mach number (> 0 or 'inf')")->required();
  add_direction(verify_cmd, common);
  verify_cmd->add_option("-n,--tests", verify.n_tests, "Number of test functions");
  verify_cmd->add_option("--seed", common.seed, "Seed for test-function placement");
  verify_cmd->add_option("--jobs", common.jobs, "Worker threads");
  verify_cmd->add_option("--perturb-wp", verify.perturb_wp, "Add this to the wall force weight");
  verify_cmd->add_option("--perturb-rho", verify.perturb_rho,
                         "Relative change of rho1 (or of the w_rho slope for concentration solutions)");
  verify_cmd->add_option("--convention", verify.convention,
                         "Wall force of AC solutions: pressure_trace | zero | negated_trace");
  verify_cmd->add_option("--out", common.out, "Output directory");

  auto* sim_cmd = app.add_subcommand("simulate", "Finite-volume run from a JSON configuration");
  sim_cmd->add_option("config,--config", simulate.config_path, "Configuration JSON file")->required();
  sim_cmd->add_option("--mach", common.mach, "Override the Mach number");
  add_direction(sim_cmd, common);
  sim_cmd->add_option("--cells", simulate.n_cells, "Override n_cells");
  sim_cmd->add_option("--t-end", simulate.t_end, "Override t_end");
  sim_cmd->add_option("--cfl", simulate.cfl, "Override cfl");
  sim_cmd->add_option("--domain-length", simulate.domain_length, "Override domain_length");
  sim_cmd->add_option("--flux", simulate.flux, "Override flux (hll | exact_riemann)");
  sim_cmd->add_option("--out", common.out, "Output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate rho1, sigma and w_p over Mach numbers");
  auto* machs_opt = sweep_cmd->add_option("--machs", sweep_machs, "Comma-separated Mach numbers ('inf' allowed)");
  auto* range_opt = sweep_cmd->add_option("--range", sweep_range, "start:stop:step (inclusive)");
  machs_opt->excludes(range_opt);
  add_direction(sweep_cmd, common);
  sweep_cmd->add_option("--jobs", common.jobs, "Worker threads");
  sweep_cmd->add_option("--out", common.out, "Output directory");

  auto* conv_cmd = app.add_subcommand("convergence", "L1 grid-convergence study against the exact solution");
  conv_cmd->add_option("--mach", common.mach, "Piston Mach number (> 0 or 'inf')")->required();
  add_direction(conv_cmd, common);
  conv_cmd->add_option("--cells", convergence.cells, "Comma-separated cell counts");
  conv_cmd->add_option("--t-end", convergence.t_end, "Final time");
  conv_cmd->add_option("--domain-length", convergence.domain_length, "Domain length X (default 1.1 x required)");
  conv_cmd->add_option("--cfl", convergence.cfl, "CFL number");
  conv_cmd->add_option("--flux", convergence.flux, "hll | exact_riemann");
  conv_cmd->add_option("--min-order", convergence.min_order, "Lowest accepted fitted order");
  conv_cmd->add_option("--max-order", convergence.max_order, "Highest accepted fitted order");
  conv_cmd->add_option("--jobs", common.jobs, "Worker threads");
  conv_cmd->add_option("--out", common.out, "Output directory");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  Invocation inv(chosen->get_name(), args);
  const int code = dispatch(err, [&] {
    if (chosen == solve_cmd) return cmd_solve(common, inv, out);
    if (chosen == verify_cmd) return cmd_verify(common, verify, inv, out);
    if (chosen == sim_cmd) return cmd_simulate(common, simulate, inv, out);
    if (chosen == sweep_cmd) return cmd_sweep(common, sweep_machs, sweep_range, inv, out);
    return cmd_convergence(common, convergence, inv, out);
  });
  if (code != kSuccess && code != kVerificationFailed) {
    // Failed runs still leave a manifest behind when the output directory is writable.
    try {
      inv.finish(common.out, code);
    } catch (const std::exception& e) {
      err << "error: io: cannot write manifest: " << e.what() << "\n";
    }
  }
  return code;
}

}  // namespace chaplygin::cli
