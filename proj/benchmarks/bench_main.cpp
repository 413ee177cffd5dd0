#include <benchmark/benchmark.h>

#include <cmath>

#include "chaplygin/exact.hpp"
#include "chaplygin/fvm.hpp"
#include "chaplygin/measure.hpp"
#include "chaplygin/riemann.hpp"

using namespace chaplygin;

static void BM_GaussLegendreCached(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gauss_legendre(n);
  for (auto _ : state) benchmark::DoNotOptimize(&gauss_legendre(n));
}
BENCHMARK(BM_GaussLegendreCached)->Arg(64)->Arg(1024);

static void BM_PairWedge(benchmark::State& state) {
  const TestFunction phi = make_bump(1.0, -0.9, 0.3, 0.3);
  const WedgePiece piece{-kInfinity, -1.0, 1.0};
  const Integrand2d f = [&phi](double t, double x) { return phi.dt(t, x); };
  for (auto _ : state) benchmark::DoNotOptimize(pair_ac(piece, f, phi.support()).value);
}
BENCHMARK(BM_PairWedge);

static void BM_ResidualSuite(benchmark::State& state) {
  const MeasureSolution sol = as_measure(solve(0.5, Direction::advancing));
  const auto jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(residual_suite(sol, 20, 1, jobs).max_normalized());
}
BENCHMARK(BM_ResidualSuite)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ExactRiemann(benchmark::State& state) {
  const State l{1.0, 0.3};
  const State r{0.6, 0.8};
  for (auto _ : state) benchmark::DoNotOptimize(exact_riemann_chaplygin(l, r, 0.25));
}
BENCHMARK(BM_ExactRiemann);

static void BM_HllFlux(benchmark::State& state) {
  const State l{1.0, 0.3};
  const State r{0.6, 0.8};
  for (auto _ : state) benchmark::DoNotOptimize(hll_flux(l, r, 0.25));
}
BENCHMARK(BM_HllFlux);

static void BM_FvRun(benchmark::State& state) {
  FvConfig c;
  c.mach = 0.5;
  c.n_cells = static_cast<int>(state.range(0));
  c.domain_length = 1.1 * required_domain_length(c.mach, c.direction, c.t_end);
  c.flux = state.range(1) ? FluxKind::exact_riemann : FluxKind::hll;
  for (auto _ : state) {
    const FvRun r = run(c);
    state.counters["steps"] = r.steps;
    benchmark::DoNotOptimize(r.min_density);
  }
}
BENCHMARK(BM_FvRun)
    ->ArgsProduct({{200, 400, 800, 1600}, {0, 1}})
    ->ArgNames({"cells", "exact"})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
