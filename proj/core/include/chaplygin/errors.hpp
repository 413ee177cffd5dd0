#pragma once

#include <stdexcept>
#include <string>

namespace chaplygin {

// Argument outside the mathematical domain of an operation (rho <= 0, mach <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A solver was asked for a piston regime it does not cover.
class RegimeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Adaptive quadrature did not reach its tolerance, or the integrand was not finite.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite-volume run aborted (non-finite wave speed, near-vacuum cell, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration; `field()` names the offending entry.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace chaplygin
