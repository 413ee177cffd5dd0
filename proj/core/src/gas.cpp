#include "chaplygin/gas.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "chaplygin/errors.hpp"

namespace chaplygin {

std::string_view to_string(Direction direction) {
  return direction == Direction::advancing ? "advancing" : "receding";
}

Direction parse_direction(std::string_view text) {
  if (text == "advancing") return Direction::advancing;
  if (text == "receding") return Direction::receding;
  throw DomainError("direction must be 'advancing' or 'receding', got '" + std::string(text) + "'");
}

void require_density(double rho) {
  if (!(rho > kDensityFloor) || !std::isfinite(rho)) {
    std::ostringstream msg;
    msg << "density must be positive and finite (Chaplygin gas has no vacuum), got " << rho;
    throw DomainError(msg.str());
  }
}

double pressure(double rho, double a) {
  require_density(rho);
  if (a == 0.0) return 0.0;
  return -a / rho;
}

double sound_speed(double rho, double a) {
  require_density(rho);
  return std::sqrt(a) / rho;
}

double mach_number(double speed, double c0) {
  if (!(c0 > 0.0)) throw DomainError("reference sound speed must be positive");
  return std::abs(speed) / c0;
}

double eos_constant(double mach) {
  if (!(mach > 0.0)) throw DomainError("Mach number must be positive");
  if (std::isinf(mach)) return 0.0;
  return 1.0 / (mach * mach);
}

GasParams nondimensionalize(double mach, Direction direction) {
  return GasParams{eos_constant(mach), 1.0, mach, direction};
}

Flux flux(const State& state, double a) {
  const double m = state.rho * state.u;
  return {m, m * state.u + pressure(state.rho, a)};
}

CharacteristicSpeeds characteristic_speeds(const State& state, double a) {
  const double c = sound_speed(state.rho, a);
  return {state.u - c, state.u + c};
}

double ambient_velocity(Direction direction) {
  return direction == Direction::advancing ? 1.0 : -1.0;
}

double piston_velocity(Direction direction) { return -ambient_velocity(direction); }

LabPoint to_lab_frame(double t, double x, const State& state, Direction direction) {
  const double v0 = piston_velocity(direction);
  return {t, x + v0 * t, State{state.rho, state.u + v0}};
}

double parse_mach(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return kInfinity;
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw DomainError("cannot parse Mach number '" + std::string(text) + "'");
  }
  if (!(value > 0.0) || std::isnan(value)) {
    throw DomainError("Mach number must be positive, got '" + std::string(text) + "'");
  }
  return value;
}

std::string format_mach(double mach) {
  if (std::isinf(mach)) return "inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, mach);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace chaplygin
