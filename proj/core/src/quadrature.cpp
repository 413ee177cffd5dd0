#include "chaplygin/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "chaplygin/errors.hpp"

namespace chaplygin {
namespace {

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

int nodes_at_level(int level) { return 4 << level; }

void require_finite(double value, const char* where) {
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << where << ": integrand is not finite";
    throw QuadratureError(msg.str());
  }
}

[[noreturn]] void fail_convergence(const char* where, double last, double diff, const QuadratureOptions& options) {
  std::ostringstream msg;
  msg << where << ": no convergence after " << options.max_levels << " levels (estimate " << last
      << ", successive difference " << diff << ", tolerance " << options.tolerance << ")";
  throw QuadratureError(msg.str());
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
  return *slot;
}

QuadResult integrate_interval(const Integrand1d& f, double a, double b, const QuadratureOptions& options) {
  if (!(b > a)) return {};
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  auto apply = [&](int n) {
    const GaussRule& rule = gauss_legendre(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = f(mid + half * rule.nodes[i]);
      require_finite(v, "integrate_interval");
      sum += rule.weights[i] * v;
    }
    return sum * half;
  };
  double previous = apply(nodes_at_level(0));
  double diff = 0.0;
  for (int level = 1; level <= options.max_levels; ++level) {
    const int n = nodes_at_level(level);
    const double current = apply(n);
    diff = std::abs(current - previous);
    if (diff < options.tolerance) return {current, diff, n};
    previous = current;
  }
  fail_convergence("integrate_interval", previous, diff, options);
}

QuadResult integrate_trapezoid(const Integrand2d& f, const Trapezoid& region, const QuadratureOptions& options) {
  if (!(region.t1 > region.t0)) return {};
  const double ht = 0.5 * (region.t1 - region.t0);
  const double mt = 0.5 * (region.t1 + region.t0);
  auto apply = [&](int n) {
    const GaussRule& rule = gauss_legendre(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s = 0.5 * (rule.nodes[i] + 1.0);
      const double t = mt + ht * rule.nodes[i];
      const double lo = region.lo0 + s * (region.lo1 - region.lo0);
      const double hi = region.hi0 + s * (region.hi1 - region.hi0);
      const double hx = 0.5 * (hi - lo);
      if (hx <= 0.0) continue;
      const double mx = 0.5 * (hi + lo);
      double inner = 0.0;
      for (int j = 0; j < n; ++j) {
        const double v = f(t, mx + hx * rule.nodes[j]);
        require_finite(v, "integrate_trapezoid");
        inner += rule.weights[j] * v;
      }
      sum += rule.weights[i] * inner * hx;
    }
    return sum * ht;
  };
  double previous = apply(nodes_at_level(0));
  double diff = 0.0;
  for (int level = 1; level <= options.max_levels; ++level) {
    const int n = nodes_at_level(level);
    const double current = apply(n);
    diff = std::abs(current - previous);
    if (diff < options.tolerance) return {current, diff, n};
    previous = current;
  }
  fail_convergence("integrate_trapezoid", previous, diff, options);
}

}  // namespace chaplygin
