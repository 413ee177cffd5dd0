#pragma once

// Radon measures on the closed quarter plane {t >= 0, x <= 0} built from
// self-similar wedge pieces and weighted Dirac lines, and numerical checks of
// the weak mass/momentum identities against C^1 bump test functions.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "chaplygin/gas.hpp"
#include "chaplygin/quadrature.hpp"

namespace chaplygin {

using TimeFunction = std::function<double(double)>;

// Closed rectangle in the (t, x) plane.
struct Rect {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

// Constant density on {slope_lo < x/t < slope_hi, x < 0, t > 0}.
struct WedgePiece {
  double slope_lo = -kInfinity;
  double slope_hi = 0.0;
  double density = 0.0;
};

// w(t) * delta along x = curve(t), t in [0, t_end).  `support` names the
// curve so that pieces of different measures on the same line can be matched.
struct DiracLine {
  std::string support;
  TimeFunction curve;
  TimeFunction curve_slope;
  TimeFunction weight;
  double t_end = kInfinity;
};

// The piston wall x = 0.
DiracLine wall_line(TimeFunction weight);
// A straight line x = speed * t through the origin.
DiracLine ray_line(std::string support, double speed, TimeFunction weight);

struct MeasureField {
  std::vector<WedgePiece> ac;
  std::vector<DiracLine> dirac;
};

// Density of the absolutely continuous part at self-similar coordinate x/t
// (0 where no wedge covers it).
double density_at_slope(const MeasureField& field, double slope);
double density_at(const MeasureField& field, double t, double x);

// Throws DomainError if a wedge leaves the quarter plane or two wedges overlap.
void validate_field(const MeasureField& field);

// (rho, m, n, pressure, w_p): the four measures and the wall force weight.
struct MeasureSolution {
  MeasureField density;
  MeasureField momentum;
  MeasureField momentum_flux;
  MeasureField pressure;
  TimeFunction wall_force;
  double mach = 1.0;
  // Undisturbed data at t = 0 (rho0, u0).
  State initial{1.0, 1.0};
};

// phi(t, x) = q(s) q(r), q(z) = (1 - z^2)^3 on |z| < 1, s = (t - tc)/r_t,
// r = (x - xc)/r_x.  C^2 with exact first derivatives.
class TestFunction {
 public:
  TestFunction(double t_center, double x_center, double r_t, double r_x);

  double value(double t, double x) const;
  double dt(double t, double x) const;
  double dx(double t, double x) const;

  double t_center() const { return t_center_; }
  double x_center() const { return x_center_; }
  double r_t() const { return r_t_; }
  double r_x() const { return r_x_; }

  Rect support() const;
  double support_area() const { return 4.0 * r_t_ * r_x_; }
  // max(sup|phi|, sup|dt phi|, sup|dx phi|).
  double c1_norm() const;

 private:
  double t_center_;
  double x_center_;
  double r_t_;
  double r_x_;
};

TestFunction make_bump(double t_center, double x_center, double r_t, double r_x);

// Max of |q'(z)| for q(z) = (1 - z^2)^3, attained at z = 1/sqrt(5).
double bump_profile_slope_max();

// \int\int_{wedge ∩ window ∩ quarter plane} density * f.
QuadResult pair_ac(const WedgePiece& piece, const Integrand2d& f, const Rect& window,
                   const QuadratureOptions& options = {});

// \int phi(t, x(t)) w(t) sqrt(x'(t)^2 + 1) dt over the window's time range.
QuadResult pair_dirac(const DiracLine& line, const Integrand2d& f, const Rect& window,
                      const QuadratureOptions& options = {});
QuadResult pair_dirac(const DiracLine& line, const TestFunction& phi,
                      const QuadratureOptions& options = {});

// <field, f> over a window containing the support of f.
QuadResult pair(const MeasureField& field, const Integrand2d& f, const Rect& window,
                const QuadratureOptions& options = {});

// <rho, dt phi> + <m, dx phi> + \int rho0 phi(0, x) dx.
double mass_residual(const MeasureSolution& sol, const TestFunction& phi,
                     const QuadratureOptions& options = {});

// <m, dt phi> + <n, dx phi> + <p, dx phi> - <w_p delta_wall, phi> + \int rho0 u0 phi(0, x) dx.
double momentum_residual(const MeasureSolution& sol, const TestFunction& phi,
                         const QuadratureOptions& options = {});

// Residuals are divided by ||phi||_{C^1} * support area.
struct ResidualRow {
  int test_id = 0;
  double t_center = 0.0;
  double x_center = 0.0;
  double r_t = 0.0;
  double r_x = 0.0;
  double mass_residual = 0.0;
  double momentum_residual = 0.0;
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
  double max_mass = 0.0;
  double max_momentum = 0.0;
  double rms_mass = 0.0;
  double rms_momentum = 0.0;

  double max_normalized() const { return max_mass > max_momentum ? max_mass : max_momentum; }
};

// Deterministic family of bumps for a solution: five straddle the wall x = 0,
// two straddle t = 0, two sit on every interior discontinuity ray, and the
// rest follow a seeded Halton sequence over a window covering the waves.
std::vector<TestFunction> make_test_family(const MeasureSolution& sol, int n_tests, std::uint64_t seed);

ResidualReport residual_suite(const MeasureSolution& sol, int n_tests, std::uint64_t seed,
                              unsigned jobs = 1, const QuadratureOptions& options = {});

void write_residual_csv(const ResidualReport& report, std::ostream& out);

struct VelocityPiece {
  double slope_lo = 0.0;
  double slope_hi = 0.0;
  double u = 0.0;
  bool defined = false;  // false where rho has zero density
};

struct DiracVelocity {
  std::string support;
  double u = 0.0;
};

struct RnReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<VelocityPiece> velocity;
  std::vector<DiracVelocity> dirac_velocity;
};

// m << rho, n << m with a common Radon-Nikodym derivative u.
RnReport rn_check(const MeasureSolution& sol);

struct WedgeEosCheck {
  double slope_lo = 0.0;
  double slope_hi = 0.0;
  double rho = 0.0;
  double pressure = 0.0;
  double expected_pressure = 0.0;
  bool ok = true;
};

struct InterfaceCheck {
  double slope = 0.0;
  State left;
  State right;
  double rh_mass = 0.0;
  double rh_momentum = 0.0;
  bool lax_admissible = true;
  int family = 0;  // 1 or 2 when admissible
};

struct EosEntropyReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<WedgeEosCheck> wedges;
  std::vector<InterfaceCheck> interfaces;
  // Informational: the wall force weight sampled on (0, 10] is >= 0.
  bool wall_force_nonnegative = true;
};

EosEntropyReport eos_entropy_check(const MeasureSolution& sol);

}  // namespace chaplygin
