#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "chaplygin/errors.hpp"
#include "chaplygin/quadrature.hpp"
#include "oracles.hpp"

using namespace chaplygin;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int n : {1, 2, 4, 8, 16, 64}) {
    const GaussRule& rule = gauss_legendre(n);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(n));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(sum, exact, 1e-14) << "n = " << n << ", k = " << k;
    }
  }
}

TEST(GaussLegendre, NodesAscendAndAreSymmetric) {
  const GaussRule& rule = gauss_legendre(33);
  for (std::size_t i = 1; i < rule.nodes.size(); ++i) EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    EXPECT_NEAR(rule.nodes[i], -rule.nodes[rule.nodes.size() - 1 - i], 1e-15);
  }
  EXPECT_EQ(rule.nodes[16], 0.0);
}

TEST(GaussLegendre, CacheIsThreadSafe) {
  std::vector<const GaussRule*> seen(4);
  std::vector<std::thread> threads;
  for (int k = 0; k < 4; ++k) threads.emplace_back([&, k] { seen[k] = &gauss_legendre(97); });
  for (auto& t : threads) t.join();
  for (const auto* p : seen) EXPECT_EQ(p, seen[0]);
}

TEST(Integrate, SmoothIntervalAgainstClosedForm) {
  const auto r = integrate_interval([](double x) { return std::exp(x) * std::sin(3.0 * x); }, -1.0, 2.0);
  // Antiderivative e^x (sin 3x - 3 cos 3x) / 10.
  const auto F = [](double x) { return std::exp(x) * (std::sin(3.0 * x) - 3.0 * std::cos(3.0 * x)) / 10.0; };
  EXPECT_NEAR(r.value, F(2.0) - F(-1.0), 1e-12);
  EXPECT_LE(r.error, 1e-10);
}

TEST(Integrate, EmptyAndReversedIntervals) {
  EXPECT_EQ(integrate_interval([](double) { return 1.0; }, 1.0, 1.0).value, 0.0);
  EXPECT_EQ(integrate_interval([](double x) { return x; }, 1.0, 0.0).value, 0.0);
}

TEST(Integrate, TrapezoidAgainstSimpson) {
  const Trapezoid region{0.2, 1.4, -1.4, -0.6, -0.3, 0.0};
  const Integrand2d f = [](double t, double x) { return std::cos(t * x) + t * t * x; };
  const double expect = oracle::simpson2d(
      f, region.t0, region.t1,
      [&](double t) { return region.lo0 + (region.lo1 - region.lo0) * (t - region.t0) / (region.t1 - region.t0); },
      [&](double t) { return region.hi0 + (region.hi1 - region.hi0) * (t - region.t0) / (region.t1 - region.t0); });
  EXPECT_NEAR(integrate_trapezoid(f, region).value, expect, 1e-10);
}

TEST(Integrate, TriangleArea) {
  // Degenerate trapezoid: a triangle with vertices (0,0), (1,-1), (1,0).
  const auto r = integrate_trapezoid([](double, double) { return 1.0; }, Trapezoid{0.0, 1.0, 0.0, -1.0, 0.0, 0.0});
  EXPECT_NEAR(r.value, 0.5, 1e-15);
}

TEST(Integrate, NonFiniteIntegrandThrows) {
  EXPECT_THROW(integrate_interval([](double x) { return std::sqrt(x); }, -1.0, 1.0), QuadratureError);
}

TEST(Integrate, NonConvergenceThrows) {
  QuadratureOptions tight;
  tight.tolerance = 1e-14;
  tight.max_levels = 2;
  EXPECT_THROW(integrate_interval([](double x) { return std::sin(200.0 * x * x); }, 0.0, 3.0, tight),
               QuadratureError);
}

TEST(Integrate, QuadResultAccumulates) {
  QuadResult a{1.0, 1e-12, 8};
  a += QuadResult{2.0, 2e-12, 16};
  EXPECT_EQ(a.value, 3.0);
  EXPECT_DOUBLE_EQ(a.error, 3e-12);
  EXPECT_EQ(a.nodes, 16);
}
