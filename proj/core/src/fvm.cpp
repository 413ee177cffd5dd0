#include "chaplygin/fvm.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>

#include "chaplygin/csv.hpp"
#include "chaplygin/errors.hpp"
#include "chaplygin/riemann.hpp"

namespace chaplygin {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kVacuumThreshold = 1e-12;

// Neumaier-compensated sum of values[i] * scale.
double compensated_total(std::span<const double> values, double scale) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return (sum + carry) * scale;
}

State cell_state(const FvState& s, std::size_t i) { return {s.rho[i], s.mom[i] / s.rho[i]}; }

std::vector<double> snapshot_schedule(const FvConfig& config) {
  std::vector<double> times;
  for (double t : config.snapshot_times) {
    if (t >= 0.0 && t <= config.t_end) times.push_back(t);
  }
  if (times.empty()) times.push_back(config.t_end);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

std::string describe(double value) {
  std::ostringstream s;
  s << value;
  return s.str();
}

}  // namespace

std::string_view to_string(FluxKind kind) { return kind == FluxKind::hll ? "hll" : "exact_riemann"; }

FluxKind parse_flux_kind(std::string_view text) {
  if (text == "hll") return FluxKind::hll;
  if (text == "exact_riemann" || text == "exact-riemann" || text == "godunov") return FluxKind::exact_riemann;
  throw ConfigError("flux", "expected 'hll' or 'exact_riemann', got '" + std::string(text) + "'");
}

double required_domain_length(double mach, Direction direction, double t_end) {
  const double c0 = std::sqrt(eos_constant(mach));
  return (std::abs(ambient_velocity(direction)) + c0) * t_end;
}

void validate(const FvConfig& config) {
  if (!(config.mach > 0.0)) throw ConfigError("mach", "must be positive or inf");
  if (!(config.n_cells > 0)) throw ConfigError("n_cells", "must be a positive count");
  if (!(config.cfl > 0.0 && config.cfl < 1.0)) throw ConfigError("cfl", "must lie in (0, 1)");
  if (!(config.t_end > 0.0) || !std::isfinite(config.t_end)) throw ConfigError("t_end", "must be positive");
  if (!(config.domain_length > 0.0) || !std::isfinite(config.domain_length)) {
    throw ConfigError("domain_length", "must be positive");
  }
  const double need = required_domain_length(config.mach, config.direction, config.t_end);
  if (!(config.domain_length > need)) {
    throw ConfigError("domain_length", "must exceed (|u0| + c0) * t_end = " + describe(need) +
                                           " so the left boundary stays in undisturbed gas");
  }
  if (config.layer_eps) {
    const double eps = *config.layer_eps;
    if (!(eps > 0.0) || eps > config.domain_length) throw ConfigError("layer_eps", "must lie in (0, domain_length]");
  }
  if (config.eps() < 2.0 * config.dx()) throw ConfigError("layer_eps", "layer must span at least two cells");
  for (double t : config.snapshot_times) {
    if (!(t >= 0.0) || t > config.t_end) throw ConfigError("snapshot_times", "entries must lie in [0, t_end]");
  }
}

FvState initial_state(const FvConfig& config) {
  const auto n = static_cast<std::size_t>(config.n_cells);
  const double u0 = ambient_velocity(config.direction);
  return FvState{std::vector<double>(n, 1.0), std::vector<double>(n, u0), 0.0};
}

double cfl_dt(const FvState& state, double a, double cfl, double dx) {
  const double root_a = std::sqrt(a);
  double fastest = 0.0;
  for (std::size_t i = 0; i < state.rho.size(); ++i) {
    const double speed = std::abs(state.mom[i] / state.rho[i]) + root_a / state.rho[i];
    if (!std::isfinite(speed)) {
      throw NumericalError("non-finite wave speed in cell " + std::to_string(i) + " at t = " + describe(state.time));
    }
    fastest = std::max(fastest, speed);
  }
  if (fastest == 0.0) return cfl * dx;
  return cfl * dx / fastest;
}

Snapshot make_snapshot(const FvState& state, const FvConfig& config) {
  const double a = eos_constant(config.mach);
  const double dx = config.dx();
  Snapshot snap;
  snap.t = state.time;
  snap.dx = dx;
  const std::size_t n = state.rho.size();
  snap.x_center.resize(n);
  snap.rho = state.rho;
  snap.u.resize(n);
  snap.p.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    snap.x_center[i] = -config.domain_length + (static_cast<double>(i) + 0.5) * dx;
    snap.u[i] = state.mom[i] / state.rho[i];
    snap.p[i] = pressure(state.rho[i], a);
  }
  return snap;
}

double layer_mass(std::span<const double> rho, double dx, double eps, double ambient) {
  if (!(dx > 0.0)) throw DomainError("layer_mass: cell width must be positive");
  if (eps < 2.0 * dx) throw DomainError("layer_mass: eps must span at least two cells (layer unresolved)");
  double cells = eps / dx;
  if (std::abs(cells - std::round(cells)) < 1e-9) cells = std::round(cells);
  const auto full = static_cast<std::size_t>(std::floor(cells));
  if (full > rho.size()) throw DomainError("layer_mass: eps exceeds the domain");
  const double fraction = cells - static_cast<double>(full);
  const std::size_t n = rho.size();
  double mass = compensated_total(rho.subspan(n - full), dx);
  if (fraction > 0.0 && full < n) mass += fraction * dx * rho[n - 1 - full];
  return mass - eps * ambient;
}

double layer_mass(const Snapshot& snapshot, double eps, double ambient) {
  return layer_mass(snapshot.rho, snapshot.dx, eps, ambient);
}

FvRun run(const FvConfig& config) {
  validate(config);
  const double a = eos_constant(config.mach);
  const double dx = config.dx();
  const double eps = config.eps();
  const State far{1.0, ambient_velocity(config.direction)};
  const auto n = static_cast<std::size_t>(config.n_cells);
  const auto interface_flux = [&](const State& l, const State& r) {
    return config.flux == FluxKind::hll ? hll_flux(l, r, a) : godunov_flux(l, r, a);
  };

  FvRun out;
  out.config = config;
  FvState state = initial_state(config);
  out.min_density = 1.0;

  const auto schedule = snapshot_schedule(config);
  std::size_t next_snapshot = 0;
  if (schedule.front() == 0.0) {
    out.snapshots.push_back(make_snapshot(state, config));
    ++next_snapshot;
  }

  std::vector<Flux> fluxes(n + 1);
  double mass = compensated_total(state.rho, dx);
  double momentum = compensated_total(state.mom, dx);

  while (state.time < config.t_end) {
    double dt = cfl_dt(state, a, config.cfl, dx);
    const double target = next_snapshot < schedule.size() ? schedule[next_snapshot] : config.t_end;
    bool lands_on_target = false;
    if (state.time + dt >= target) {
      dt = target - state.time;
      lands_on_target = true;
    }
    if (!(dt > 0.0)) throw NumericalError("time step collapsed at t = " + describe(state.time));

    fluxes[0] = interface_flux(far, cell_state(state, 0));
    for (std::size_t i = 1; i < n; ++i) fluxes[i] = interface_flux(cell_state(state, i - 1), cell_state(state, i));
    fluxes[n] = interface_flux(cell_state(state, n - 1), wall_bc(cell_state(state, n - 1)));

    const double ratio = dt / dx;
    double step_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      state.rho[i] -= ratio * (fluxes[i + 1].mass - fluxes[i].mass);
      state.mom[i] -= ratio * (fluxes[i + 1].momentum - fluxes[i].momentum);
      step_min = std::min(step_min, state.rho[i]);
    }
    state.time = lands_on_target ? target : state.time + dt;
    ++out.steps;
    if (!(step_min > kVacuumThreshold)) {
      throw NumericalError("near-vacuum: min density " + describe(step_min) + " at t = " + describe(state.time));
    }
    out.min_density = std::min(out.min_density, step_min);

    const double new_mass = compensated_total(state.rho, dx);
    const double new_momentum = compensated_total(state.mom, dx);
    DiagnosticRow row;
    row.t = state.time;
    row.dt = dt;
    row.total_mass = new_mass;
    row.layer_mass = layer_mass(state.rho, dx, eps);
    row.wall_force = -(new_momentum - momentum) / dt + fluxes[0].momentum;
    row.mass_defect = std::abs(new_mass - (mass + dt * (fluxes[0].mass - fluxes[n].mass)));
    out.max_mass_defect = std::max(out.max_mass_defect, row.mass_defect);
    out.diagnostics.push_back(row);
    mass = new_mass;
    momentum = new_momentum;

    if (lands_on_target && next_snapshot < schedule.size() && target == schedule[next_snapshot]) {
      out.snapshots.push_back(make_snapshot(state, config));
      ++next_snapshot;
    }
  }
  out.final_state = std::move(state);
  return out;
}

double wall_force(const FvRun& run) {
  const double half = 0.5 * run.config.t_end;
  double weighted = 0.0;
  double span = 0.0;
  for (const auto& row : run.diagnostics) {
    if (row.t - 0.5 * row.dt < half) continue;
    weighted += row.wall_force * row.dt;
    span += row.dt;
  }
  return span > 0.0 ? weighted / span : kNaN;
}

double layer_mass_slope(const FvRun& run, double t_lo, double t_hi) {
  double n = 0.0, st = 0.0, sm = 0.0, stt = 0.0, stm = 0.0;
  for (const auto& row : run.diagnostics) {
    if (row.t < t_lo || row.t > t_hi) continue;
    n += 1.0;
    st += row.t;
    sm += row.layer_mass;
    stt += row.t * row.t;
    stm += row.t * row.layer_mass;
  }
  const double denom = n * stt - st * st;
  if (n < 2.0 || denom == 0.0) return kNaN;
  return (n * stm - st * sm) / denom;
}

double discontinuity_position(const Snapshot& snapshot, double upstream_rho, int plateau_cells) {
  const std::size_t n = snapshot.rho.size();
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(plateau_cells), n);
  double plateau = 0.0;
  for (std::size_t i = n - k; i < n; ++i) plateau += snapshot.rho[i];
  plateau /= static_cast<double>(k);
  double excess = 0.0;
  for (double r : snapshot.rho) excess += (r - upstream_rho) * snapshot.dx;
  return -excess / (plateau - upstream_rho);
}

double l1_error(const Snapshot& snapshot, const PistonSolution& exact, double exclude) {
  const double t = snapshot.t;
  const double half = 0.5 * snapshot.dx;
  double wave = 0.0;
  bool has_wave = false;
  if (const auto* s = std::get_if<ShockSolution>(&exact)) {
    wave = s->sigma * t;
    has_wave = true;
  } else if (const auto* c = std::get_if<ContactWaveSolution>(&exact)) {
    wave = c->sigma * t;
    has_wave = true;
  }
  const auto exact_rho = [&](double x) {
    if (!(t > 0.0)) return 1.0;
    return evaluate(exact, t, x).state.rho;
  };
  double error = 0.0;
  for (std::size_t i = 0; i < snapshot.rho.size(); ++i) {
    const double xl = snapshot.x_center[i] - half;
    const double xr = snapshot.x_center[i] + half;
    if (exclude > 0.0 && xr > -exclude + 1e-12 * snapshot.dx) continue;
    double average = 0.0;
    if (has_wave && t > 0.0 && wave > xl && wave < xr) {
      average = ((wave - xl) * exact_rho(0.5 * (xl + wave)) + (xr - wave) * exact_rho(0.5 * (wave + xr))) /
                snapshot.dx;
    } else {
      average = exact_rho(snapshot.x_center[i]);
    }
    error += std::abs(snapshot.rho[i] - average) * snapshot.dx;
  }
  return error;
}

ConvergenceReport convergence_study(const FvConfig& config, std::span<const int> cell_counts, unsigned jobs) {
  if (cell_counts.size() < 3) throw ConfigError("cell_counts", "a convergence study needs at least three grids");
  const PistonSolution exact = solve(config.mach, config.direction);
  const bool concentration = regime_of(exact) == Regime::advancing_sonic_or_supersonic;

  std::vector<ConvergenceRow> rows(cell_counts.size());
  auto one = [&](std::size_t k) {
    FvConfig c = config;
    c.n_cells = cell_counts[k];
    c.snapshot_times = {c.t_end};
    const FvRun r = run(c);
    rows[k] = ConvergenceRow{c.n_cells, c.dx(), l1_error(r.snapshots.back(), exact, concentration ? c.eps() : 0.0),
                             kNaN};
  };
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, cell_counts.size());
  if (workers == 1) {
    for (std::size_t k = 0; k < rows.size(); ++k) one(k);
  } else {
    std::vector<std::future<void>> tasks;
    for (std::size_t w = 0; w < workers; ++w) {
      tasks.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t k = w; k < rows.size(); k += workers) one(k);
      }));
    }
    for (auto& t : tasks) t.get();
  }

  ConvergenceReport report;
  report.exact = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.l1_error < 1e-13; });
  double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k > 0) {
      if (!(rows[k].l1_error < rows[k - 1].l1_error)) report.monotone = false;
      if (!report.exact) {
        rows[k].order = std::log(rows[k - 1].l1_error / rows[k].l1_error) / std::log(rows[k - 1].dx / rows[k].dx);
      }
    }
    if (!report.exact) {
      const double x = std::log(rows[k].dx);
      const double y = std::log(rows[k].l1_error);
      n += 1.0;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
  }
  if (report.exact) {
    report.monotone = true;
    report.fitted_order = kNaN;
  } else {
    report.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  report.rows = std::move(rows);
  return report;
}

void write_snapshot_csv(const FvRun& run, std::ostream& out) {
  out << "t,x_center,rho,u,p\n";
  for (const auto& snap : run.snapshots) {
    const std::string t = format_double(snap.t);
    for (std::size_t i = 0; i < snap.rho.size(); ++i) {
      write_csv_row(out, {t, format_double(snap.x_center[i]), format_double(snap.rho[i]), format_double(snap.u[i]),
                          format_double(snap.p[i])});
    }
  }
}

void write_diagnostics_csv(const FvRun& run, std::ostream& out) {
  out << "t,total_mass,layer_mass,wall_force\n";
  for (const auto& row : run.diagnostics) {
    write_csv_row(out, {format_double(row.t), format_double(row.total_mass), format_double(row.layer_mass),
                        format_double(row.wall_force)});
  }
}

void write_convergence_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "n_cells,dx,l1_error,order\n";
  for (const auto& row : report.rows) {
    write_csv_row(out, {std::to_string(row.n_cells), format_double(row.dx), format_double(row.l1_error),
                        format_double(row.order)});
  }
}

}  // namespace chaplygin
