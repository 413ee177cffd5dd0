#include "chaplygin/riemann.hpp"

#include <algorithm>
#include <cmath>

#include "chaplygin/errors.hpp"

namespace chaplygin {

RiemannResult exact_riemann_chaplygin(const State& left, const State& right, double a) {
  require_density(left.rho);
  require_density(right.rho);
  if (a < 0.0) throw DomainError("EOS constant must be nonnegative");

  if (left == right) {
    const double c = std::sqrt(a) / left.rho;
    return RiemannFan{left.u - c, left.u + c, left, left, right, true, false};
  }

  if (a == 0.0) {
    if (left.u > right.u) return DeltaShockCase{left, right, left.u, right.u};
    const bool separating = left.u < right.u;
    return RiemannFan{left.u, right.u, left, separating ? State{0.0, 0.0} : right, right, false, separating};
  }

  const double lambda_left = left.u - std::sqrt(a) / left.rho;
  const double lambda_right = right.u + std::sqrt(a) / right.rho;
  if (lambda_left >= lambda_right) return DeltaShockCase{left, right, lambda_left, lambda_right};

  // u - c is carried unchanged across the 2-contact and u + c across the 1-contact.
  const double u_star = 0.5 * (lambda_left + lambda_right);
  const double c_star = 0.5 * (lambda_right - lambda_left);
  const State star{std::sqrt(a) / c_star, u_star};
  return RiemannFan{lambda_left, lambda_right, left, star, right, false, false};
}

SampledState sample(const RiemannFan& fan, double xi) {
  if (xi < fan.sigma1) return {fan.left, false};
  if (xi > fan.sigma2) return {fan.right, false};
  if (fan.trivial) return {fan.left, false};
  return {fan.star, fan.vacuum_star};
}

Flux hll_flux(const State& left, const State& right, double a) {
  if (left == right) return flux(left, a);
  const auto l = characteristic_speeds(left, a);
  const auto r = characteristic_speeds(right, a);
  const double s_left = std::min(l.minus, r.minus);
  const double s_right = std::max(l.plus, r.plus);
  const Flux fl = flux(left, a);
  if (s_left >= 0.0) return fl;
  const Flux fr = flux(right, a);
  if (s_right <= 0.0) return fr;
  const double inv = 1.0 / (s_right - s_left);
  const double ml = left.rho * left.u;
  const double mr = right.rho * right.u;
  return {(s_right * fl.mass - s_left * fr.mass + s_left * s_right * (right.rho - left.rho)) * inv,
          (s_right * fl.momentum - s_left * fr.momentum + s_left * s_right * (mr - ml)) * inv};
}

Flux godunov_flux(const State& left, const State& right, double a) {
  const RiemannResult result = exact_riemann_chaplygin(left, right, a);
  if (std::holds_alternative<DeltaShockCase>(result)) return hll_flux(left, right, a);
  const SampledState at_interface = sample(std::get<RiemannFan>(result), 0.0);
  if (at_interface.vacuum) return {};
  return flux(at_interface.state, a);
}

State wall_bc(const State& interior) { return {interior.rho, -interior.u}; }

}  // namespace chaplygin
