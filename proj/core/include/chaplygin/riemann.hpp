#pragma once

// Riemann problems for the Chaplygin gas.  Both fields are linearly
// degenerate, so a solvable problem is two contact lines with speeds
// u_L - c_L and u_R + c_R; when those characteristic speeds overlap the
// solution is a delta shock and no intermediate state exists.

#include <variant>

#include "chaplygin/gas.hpp"

namespace chaplygin {

struct RiemannFan {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  State left;
  State star;
  State right;
  bool trivial = false;      // left == right, no waves
  bool vacuum_star = false;  // pressureless gas separating (a = 0, u_L < u_R)
};

struct DeltaShockCase {
  State left;
  State right;
  double lambda_left = 0.0;   // u_L - c_L
  double lambda_right = 0.0;  // u_R + c_R
};

using RiemannResult = std::variant<RiemannFan, DeltaShockCase>;

RiemannResult exact_riemann_chaplygin(const State& left, const State& right, double a);

struct SampledState {
  State state;
  bool vacuum = false;
};

// State on the ray x/t = xi.
SampledState sample(const RiemannFan& fan, double xi);

Flux hll_flux(const State& left, const State& right, double a);

// Flux of the exact Riemann solution on x/t = 0; HLL where the problem is a delta shock.
Flux godunov_flux(const State& left, const State& right, double a);

// Reflective ghost cell for the impermeable piston.
State wall_bc(const State& interior);

}  // namespace chaplygin
