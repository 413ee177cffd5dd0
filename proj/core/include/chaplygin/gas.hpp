#pragma once

// Chaplygin equation of state p = -a / rho and the nondimensional piston
// scaling (rho0 = 1, |V0| = 1, a = 1 / M0^2).

#include <limits>
#include <string>
#include <string_view>

namespace chaplygin {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Densities at or below this are rejected: the Chaplygin gas has no vacuum state.
inline constexpr double kDensityFloor = 1e-300;

enum class Direction { advancing, receding };

std::string_view to_string(Direction direction);
Direction parse_direction(std::string_view text);

// Pointwise gas state in conservative-friendly primitive form.
struct State {
  double rho = 1.0;
  double u = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

struct Flux {
  double mass = 0.0;
  double momentum = 0.0;
};

// Nondimensional gas/piston parameters.  `mach` may be +infinity, in which
// case `a` is exactly zero (pressureless limit away from the piston).
struct GasParams {
  double a = 1.0;
  double rho0 = 1.0;
  double mach = 1.0;
  Direction direction = Direction::advancing;
};

double pressure(double rho, double a);
double sound_speed(double rho, double a);
double mach_number(double speed, double c0);

// EOS constant for a given piston Mach number: 1/M0^2, or 0 for M0 = inf.
double eos_constant(double mach);

GasParams nondimensionalize(double mach, Direction direction);

Flux flux(const State& state, double a);

// Characteristic speeds u - c and u + c.
struct CharacteristicSpeeds {
  double minus = 0.0;
  double plus = 0.0;
};
CharacteristicSpeeds characteristic_speeds(const State& state, double a);

// Velocity of the undisturbed gas in the piston frame: +1 when the piston
// advances into the gas, -1 when it recedes.
double ambient_velocity(Direction direction);

// Piston velocity V0 in the lab frame (advancing piston moves toward x < 0).
double piston_velocity(Direction direction);

struct LabPoint {
  double t = 0.0;
  double x = 0.0;
  State state;
};

// Undo the Galilean shift: x -> x + V0 t, u -> u + V0.
LabPoint to_lab_frame(double t, double x, const State& state, Direction direction);

// Throws DomainError unless rho is finite and above kDensityFloor.
void require_density(double rho);

// Parses a Mach number: a positive float or the literal "inf".
double parse_mach(std::string_view text);
std::string format_mach(double mach);

}  // namespace chaplygin
