#pragma once

// First-order Godunov-type finite-volume solver for the Chaplygin Euler
// system on [-X, 0] in the piston frame, with a reflective wall at x = 0 and
// the undisturbed gas imposed at x = -X.

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "chaplygin/exact.hpp"
#include "chaplygin/gas.hpp"

namespace chaplygin {

enum class FluxKind { hll, exact_riemann };

std::string_view to_string(FluxKind kind);
FluxKind parse_flux_kind(std::string_view text);

struct FvConfig {
  double mach = 2.0;
  Direction direction = Direction::advancing;
  double domain_length = 1.65;
  int n_cells = 800;
  double cfl = 0.45;
  double t_end = 1.0;
  std::vector<double> snapshot_times;  // empty: only t_end
  std::optional<double> layer_eps;     // default 0.05 * domain_length
  FluxKind flux = FluxKind::hll;

  double eps() const { return layer_eps.value_or(0.05 * domain_length); }
  double dx() const { return domain_length / n_cells; }
};

// Smallest admissible domain: the fastest characteristic of the undisturbed
// gas, |u0| + c0, times t_end.
double required_domain_length(double mach, Direction direction, double t_end);

// Throws ConfigError naming the first invalid field.
void validate(const FvConfig& config);

struct FvState {
  std::vector<double> rho;
  std::vector<double> mom;
  double time = 0.0;
};

FvState initial_state(const FvConfig& config);

// cfl * dx / max_i(|u_i| + c_i); cfl * dx when every speed vanishes.
double cfl_dt(const FvState& state, double a, double cfl, double dx);

struct Snapshot {
  double t = 0.0;
  double dx = 0.0;
  std::vector<double> x_center;
  std::vector<double> rho;
  std::vector<double> u;
  std::vector<double> p;
};

// One row per time step, evaluated at the end of the step.
struct DiagnosticRow {
  double t = 0.0;
  double dt = 0.0;
  double total_mass = 0.0;
  double layer_mass = 0.0;
  double wall_force = 0.0;   // -dP/dt + momentum inflow at x = -X
  double mass_defect = 0.0;  // |M^{n+1} - M^n - dt (inflow - outflow)|
};

struct FvRun {
  FvConfig config;
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticRow> diagnostics;
  FvState final_state;
  double max_mass_defect = 0.0;
  double min_density = 0.0;
  int steps = 0;
};

FvRun run(const FvConfig& config);

Snapshot make_snapshot(const FvState& state, const FvConfig& config);

// \int_{-eps}^0 rho dx - eps * ambient over the piecewise-constant cell data.
double layer_mass(std::span<const double> rho, double dx, double eps, double ambient = 1.0);
double layer_mass(const Snapshot& snapshot, double eps, double ambient = 1.0);

// Time average of the wall force over the second half of the run.
double wall_force(const FvRun& run);

// Least-squares slope of layer mass against time on [t_lo, t_hi].
double layer_mass_slope(const FvRun& run, double t_lo, double t_hi);

// Equal-area location of the single discontinuity in a snapshot, with the
// downstream plateau measured from the `plateau_cells` cells next to the wall.
double discontinuity_position(const Snapshot& snapshot, double upstream_rho, int plateau_cells = 20);

// L1 density error against cell averages of the exact solution, ignoring
// cells that intersect [-exclude, 0].
double l1_error(const Snapshot& snapshot, const PistonSolution& exact, double exclude = 0.0);

struct ConvergenceRow {
  int n_cells = 0;
  double dx = 0.0;
  double l1_error = 0.0;
  double order = 0.0;  // against the previous row; NaN for the first
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double fitted_order = 0.0;  // least squares of log error vs log dx
  bool monotone = true;
  bool exact = false;  // every error is at rounding level
};

// Concentration runs are compared only on x < -eps, away from the wall layer.
ConvergenceReport convergence_study(const FvConfig& config, std::span<const int> cell_counts, unsigned jobs = 1);

void write_snapshot_csv(const FvRun& run, std::ostream& out);
void write_diagnostics_csv(const FvRun& run, std::ostream& out);
void write_convergence_csv(const ConvergenceReport& report, std::ostream& out);

}  // namespace chaplygin
