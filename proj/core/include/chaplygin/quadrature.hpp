#pragma once

// Gauss-Legendre rules and node-doubling adaptive integration on intervals
// and on trapezoids {t0 <= t <= t1, lo(t) <= x <= hi(t)} with linear lo/hi.

#include <functional>
#include <vector>

namespace chaplygin {

struct QuadratureOptions {
  // Stop once two successive levels differ by less than this (absolute).
  double tolerance = 1e-10;
  // Level k uses 4 * 2^k nodes per direction.
  int max_levels = 12;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // |I_k - I_{k-1}| at the accepted level
  int nodes = 0;       // nodes per direction at the accepted level

  QuadResult& operator+=(const QuadResult& other) {
    value += other.value;
    error += other.error;
    if (other.nodes > nodes) nodes = other.nodes;
    return *this;
  }
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule. Thread-safe; the returned reference stays valid.
const GaussRule& gauss_legendre(int n);

using Integrand1d = std::function<double(double)>;
using Integrand2d = std::function<double(double t, double x)>;

// Zero for an empty or reversed interval.
QuadResult integrate_interval(const Integrand1d& f, double a, double b,
                              const QuadratureOptions& options = {});

// Lower/upper x-limits are the segments lo0->lo1 and hi0->hi1 over [t0, t1].
struct Trapezoid {
  double t0 = 0.0;
  double t1 = 0.0;
  double lo0 = 0.0;
  double lo1 = 0.0;
  double hi0 = 0.0;
  double hi1 = 0.0;
};

QuadResult integrate_trapezoid(const Integrand2d& f, const Trapezoid& region,
                               const QuadratureOptions& options = {});

}  // namespace chaplygin
