#include "chaplygin/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chaplygin/errors.hpp"

namespace chaplygin {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Pressure that tolerates the vacuum limit of the pressureless gas.
double jump_pressure(double rho, double a) { return a == 0.0 ? 0.0 : pressure(rho, a); }

std::string describe_mach(double mach) { return "M0 = " + format_mach(mach); }

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::advancing_subsonic:
      return "AdvancingSubsonic";
    case Regime::advancing_sonic_or_supersonic:
      return "AdvancingSonicOrSupersonic";
    case Regime::receding:
      return "Receding";
  }
  return "Unknown";
}

Regime classify(const GasParams& params) {
  if (params.direction == Direction::receding) return Regime::receding;
  return params.mach < 1.0 ? Regime::advancing_subsonic : Regime::advancing_sonic_or_supersonic;
}

std::vector<double> shock_candidate_roots(double p0) {
  if (!(p0 < 0.0)) throw DomainError("shock_candidate_roots: p0 must be negative");
  if (p0 == -1.0) return {0.5};
  // Quadratic (p0 + 1) r^2 - 2 p0 r + p0 = 0 in cancellation-free form.
  const double quad = p0 + 1.0;
  const double q = p0 - std::sqrt(-p0);
  std::vector<double> roots{q / quad, p0 / q};
  std::sort(roots.begin(), roots.end());
  return roots;
}

ShockSolution solve_advancing_subsonic(double mach) {
  if (!(mach > 0.0 && mach < 1.0)) {
    throw RegimeError("solve_advancing_subsonic needs 0 < M0 < 1, got " + describe_mach(mach));
  }
  const double a = eos_constant(mach);
  // Physical root: rho1 > 0 and sigma = -1/(rho1 - 1) < 0, i.e. rho1 > 1.
  for (double rho1 : shock_candidate_roots(-a)) {
    if (rho1 > 1.0) {
      ShockSolution s;
      s.mach = mach;
      s.sigma = -1.0 / (rho1 - 1.0);
      s.upstream = {1.0, 1.0};
      s.downstream = {rho1, 0.0};
      return s;
    }
  }
  throw RegimeError("no compressive root for " + describe_mach(mach));
}

ConcentrationSolution solve_advancing_supersonic(double mach) {
  if (!(mach >= 1.0)) {
    throw RegimeError("solve_advancing_supersonic needs M0 >= 1, got " + describe_mach(mach));
  }
  ConcentrationSolution s;
  s.mach = mach;
  s.w_rho_slope = 1.0;
  s.w_p = 1.0 - eos_constant(mach);
  s.ambient = {1.0, 1.0};
  return s;
}

ContactWaveSolution solve_receding(double mach) {
  if (!(mach > 0.0)) throw DomainError("solve_receding needs M0 > 0");
  ContactWaveSolution s;
  s.mach = mach;
  s.upstream = {1.0, -1.0};
  if (std::isinf(mach)) {
    s.sigma = -1.0;
    s.downstream = {0.0, 0.0};
    s.limit_vacuum = true;
    return s;
  }
  // With u0 = -1 the mass jump gives sigma = 1/(rho1 - 1); sigma < 0 needs 0 < rho1 < 1.
  for (double rho1 : shock_candidate_roots(-eos_constant(mach))) {
    if (rho1 > 0.0 && rho1 < 1.0) {
      s.sigma = 1.0 / (rho1 - 1.0);
      s.downstream = {rho1, 0.0};
      return s;
    }
  }
  throw RegimeError("no rarefied root for " + describe_mach(mach));
}

PistonSolution solve(const GasParams& params) {
  switch (classify(params)) {
    case Regime::advancing_subsonic:
      return solve_advancing_subsonic(params.mach);
    case Regime::advancing_sonic_or_supersonic:
      return solve_advancing_supersonic(params.mach);
    case Regime::receding:
      return solve_receding(params.mach);
  }
  throw RegimeError("unreachable regime");
}

PistonSolution solve(double mach, Direction direction) { return solve(nondimensionalize(mach, direction)); }

Regime regime_of(const PistonSolution& solution) {
  return std::visit(Overloaded{[](const ShockSolution&) { return Regime::advancing_subsonic; },
                               [](const ConcentrationSolution&) { return Regime::advancing_sonic_or_supersonic; },
                               [](const ContactWaveSolution&) { return Regime::receding; }},
                    solution);
}

double mach_of(const PistonSolution& solution) {
  return std::visit([](const auto& s) { return s.mach; }, solution);
}

RhResidual rh_residual(const State& left, const State& right, double sigma, double a) {
  const double ml = left.rho * left.u;
  const double mr = right.rho * right.u;
  const double fl = ml * left.u + jump_pressure(left.rho, a);
  const double fr = mr * right.u + jump_pressure(right.rho, a);
  return {sigma * (right.rho - left.rho) - (mr - ml), sigma * (mr - ml) - (fr - fl)};
}

LaxResult lax_admissible(const State& left, const State& right, double sigma, double a, double tol) {
  const auto speeds = [a](const State& s) {
    const double c = a == 0.0 ? 0.0 : sound_speed(s.rho, a);
    return CharacteristicSpeeds{s.u - c, s.u + c};
  };
  const auto l = speeds(left);
  const auto r = speeds(right);
  const double scale = std::max({1.0, std::abs(sigma), std::abs(l.minus), std::abs(l.plus), std::abs(r.minus),
                                 std::abs(r.plus)});
  const double eps = tol * scale;
  if (r.minus <= sigma + eps && sigma <= l.minus + eps && sigma <= r.plus + eps) return {true, 1};
  if (r.plus <= sigma + eps && sigma <= l.plus + eps && l.minus <= sigma + eps) return {true, 2};
  return {false, 0};
}

NonexistenceReport prove_nonexistence(double mach) {
  if (!(mach >= 1.0)) {
    throw RegimeError("prove_nonexistence needs M0 >= 1, got " + describe_mach(mach));
  }
  NonexistenceReport report;
  report.mach = mach;
  if (std::isinf(mach)) {
    // p0 = 0: the quadratic degenerates to rho^2 = 0; the limit of 1/(M0 + 1).
    report.admissible_rho1 = 0.0;
    report.implied_sigma = 1.0;
    report.rejected_reason = "double root at the vacuum limit rho1 = 0";
  } else {
    const auto roots = shock_candidate_roots(-eos_constant(mach));
    for (double r : roots) {
      if (r > 0.0) {
        report.admissible_rho1 = r;
      } else {
        report.rejected_root = r;
        report.rejected_reason = "negative density";
      }
    }
    if (roots.size() == 1) report.rejected_reason = "single root (quadratic degenerates at M0 = 1)";
    report.implied_sigma = -1.0 / (report.admissible_rho1 - 1.0);
  }
  report.shock_exists = report.implied_sigma < 0.0;
  std::ostringstream verdict;
  if (report.shock_exists) {
    verdict << "shock found in x < 0";
  } else {
    verdict << "no shock in x < 0: the only positive root rho1 = " << report.admissible_rho1
            << " gives sigma = " << report.implied_sigma << " > 0";
  }
  report.verdict = verdict.str();
  return report;
}

PointValue evaluate(const PistonSolution& solution, double t, double x) {
  if (!(t > 0.0)) throw DomainError("evaluate: t must be positive");
  if (!(x <= 0.0)) throw DomainError("evaluate: x must be nonpositive");
  const double xi = x / t;
  return std::visit(
      Overloaded{[&](const ShockSolution& s) {
                   return PointValue{PointValue::Kind::regular, xi < s.sigma ? s.upstream : s.downstream};
                 },
                 [&](const ConcentrationSolution& s) {
                   if (x == 0.0) return PointValue{PointValue::Kind::singular_support, s.ambient};
                   return PointValue{PointValue::Kind::regular, s.ambient};
                 },
                 [&](const ContactWaveSolution& s) {
                   if (xi < s.sigma) return PointValue{PointValue::Kind::regular, s.upstream};
                   if (s.limit_vacuum) return PointValue{PointValue::Kind::vacuum, s.downstream};
                   return PointValue{PointValue::Kind::regular, s.downstream};
                 }},
      solution);
}

namespace {

// Two-wedge measures for a single jump at slope sigma.
MeasureSolution two_state_measure(const State& up, const State& down, double sigma, double mach, double a,
                                  WallForceConvention convention) {
  const auto pieces = [sigma](double up_value, double down_value) {
    MeasureField field;
    field.ac = {WedgePiece{-kInfinity, sigma, up_value}, WedgePiece{sigma, 0.0, down_value}};
    return field;
  };
  MeasureSolution m;
  m.mach = mach;
  m.initial = up;
  m.density = pieces(up.rho, down.rho);
  m.momentum = pieces(up.rho * up.u, down.rho * down.u);
  m.momentum_flux = pieces(up.rho * up.u * up.u, down.rho * down.u * down.u);
  m.pressure = pieces(jump_pressure(up.rho, a), jump_pressure(down.rho, a));
  const double trace = jump_pressure(down.rho, a);
  double w = 0.0;
  switch (convention) {
    case WallForceConvention::pressure_trace:
      w = trace;
      break;
    case WallForceConvention::zero:
      w = 0.0;
      break;
    case WallForceConvention::negated_trace:
      w = -trace;
      break;
  }
  m.wall_force = [w](double) { return w; };
  return m;
}

}  // namespace

MeasureSolution as_measure(const PistonSolution& solution, WallForceConvention convention) {
  return std::visit(
      Overloaded{[&](const ShockSolution& s) {
                   return two_state_measure(s.upstream, s.downstream, s.sigma, s.mach, eos_constant(s.mach),
                                            convention);
                 },
                 [&](const ContactWaveSolution& s) {
                   return two_state_measure(s.upstream, s.downstream, s.sigma, s.mach, eos_constant(s.mach),
                                            convention);
                 },
                 [&](const ConcentrationSolution& s) {
                   const double a = eos_constant(s.mach);
                   const State amb = s.ambient;
                   const auto whole = [](double value) {
                     MeasureField field;
                     field.ac = {WedgePiece{-kInfinity, 0.0, value}};
                     return field;
                   };
                   MeasureSolution m;
                   m.mach = s.mach;
                   m.initial = amb;
                   m.density = whole(amb.rho);
                   const double slope = s.w_rho_slope;
                   m.density.dirac.push_back(wall_line([slope](double t) { return slope * t; }));
                   m.momentum = whole(amb.rho * amb.u);
                   m.momentum_flux = whole(amb.rho * amb.u * amb.u);
                   m.pressure = whole(jump_pressure(amb.rho, a));
                   const double w = s.w_p;
                   m.wall_force = [w](double) { return w; };
                   return m;
                 }},
      solution);
}

SolutionSummary summarize(const PistonSolution& solution) {
  SolutionSummary out;
  out.regime = regime_of(solution);
  out.mach = mach_of(solution);
  std::visit(Overloaded{[&](const ShockSolution& s) {
                          out.rho1 = s.downstream.rho;
                          out.sigma = s.sigma;
                          out.w_p = jump_pressure(s.downstream.rho, eos_constant(s.mach));
                        },
                        [&](const ConcentrationSolution& s) {
                          out.rho1 = kNaN;
                          out.sigma = kNaN;
                          out.w_p = s.w_p;
                        },
                        [&](const ContactWaveSolution& s) {
                          out.rho1 = s.downstream.rho;
                          out.sigma = s.sigma;
                          out.w_p = jump_pressure(s.downstream.rho, eos_constant(s.mach));
                        }},
             solution);
  return out;
}

}  // namespace chaplygin
