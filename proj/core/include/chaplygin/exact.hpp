#pragma once

// Closed-form piston solutions in the piston frame: the gas occupies x < 0,
// the piston sits at x = 0, and the undisturbed gas is (rho, u) = (1, +-1).

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chaplygin/gas.hpp"
#include "chaplygin/measure.hpp"

namespace chaplygin {

enum class Regime { advancing_subsonic, advancing_sonic_or_supersonic, receding };

std::string_view to_string(Regime regime);

Regime classify(const GasParams& params);

// Single shock separating the undisturbed gas from gas at rest on the piston.
struct ShockSolution {
  double sigma = 0.0;
  State upstream{1.0, 1.0};
  State downstream{1.0, 0.0};
  double mach = 0.5;
};

// Ambient gas plus mass w_rho(t) = slope * t concentrated on the piston, which
// feels the force w_p = 1 - 1/M0^2 per unit volume.
struct ConcentrationSolution {
  double mach = 1.0;
  double w_rho_slope = 1.0;
  double w_p = 0.0;
  State ambient{1.0, 1.0};
};

// Receding piston: one contact line x = sigma t.  For M0 = inf the state behind
// it is the vacuum limit (rho = 0, p = 0) and `limit_vacuum` is set.
struct ContactWaveSolution {
  double sigma = 0.0;
  State upstream{1.0, -1.0};
  State downstream{0.5, 0.0};
  double mach = 1.0;
  bool limit_vacuum = false;
};

using PistonSolution = std::variant<ShockSolution, ConcentrationSolution, ContactWaveSolution>;

Regime regime_of(const PistonSolution& solution);
double mach_of(const PistonSolution& solution);

// Roots of (p0 + 1) rho^2 - 2 p0 rho + p0 = 0, ascending.  One root when p0 = -1.
std::vector<double> shock_candidate_roots(double p0);

ShockSolution solve_advancing_subsonic(double mach);
ConcentrationSolution solve_advancing_supersonic(double mach);
ContactWaveSolution solve_receding(double mach);

PistonSolution solve(const GasParams& params);
PistonSolution solve(double mach, Direction direction);

struct RhResidual {
  double mass = 0.0;
  double momentum = 0.0;
};

// sigma [U] - [F(U)] across a jump from `left` to `right`.
RhResidual rh_residual(const State& left, const State& right, double sigma, double a);

struct LaxResult {
  bool admissible = false;
  int family = 0;
};

// Non-strict Lax inequalities with relative tolerance `tol`.  Linearly
// degenerate Chaplygin jumps sit exactly on the equality.
LaxResult lax_admissible(const State& left, const State& right, double sigma, double a, double tol = 1e-12);

struct NonexistenceReport {
  double mach = 1.0;
  double admissible_rho1 = 0.0;  // 1/(M0 + 1): the only positive root
  double implied_sigma = 0.0;    // -1/(rho1 - 1) > 0
  std::optional<double> rejected_root;
  std::string rejected_reason;
  bool shock_exists = false;
  std::string verdict;
};

NonexistenceReport prove_nonexistence(double mach);

// Result of sampling a solution at a point of the quarter plane.
struct PointValue {
  enum class Kind { regular, vacuum, singular_support };
  Kind kind = Kind::regular;
  State state;
};

PointValue evaluate(const PistonSolution& solution, double t, double x);

// How the wall pressure trace of an absolutely continuous solution enters the
// w_p term of the measure identities.
enum class WallForceConvention {
  pressure_trace,  // w_p(t) = p(t, 0-): the force the gas exerts on the piston
  zero,            // w_p = 0
  negated_trace,   // w_p(t) = -p(t, 0-)
};

MeasureSolution as_measure(const PistonSolution& solution,
                           WallForceConvention convention = WallForceConvention::pressure_trace);

// Density and pressure behind the wave, and w_p, for tables.
struct SolutionSummary {
  Regime regime = Regime::advancing_subsonic;
  double mach = 0.0;
  double rho1 = 0.0;
  double sigma = 0.0;
  double w_p = 0.0;
};

SolutionSummary summarize(const PistonSolution& solution);

}  // namespace chaplygin
