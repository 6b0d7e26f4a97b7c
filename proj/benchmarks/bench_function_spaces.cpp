#include <benchmark/benchmark.h>

#include "latproj/function_spaces.hpp"

using namespace latproj;

static void BM_GaussLegendreGrid(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(QuadratureGrid::gauss_legendre(nodes).size());
}
BENCHMARK(BM_GaussLegendreGrid)->Arg(64)->Arg(1024)->Arg(4096);

static void BM_CauchyDistance(benchmark::State& state) {
  const auto grid = QuadratureGrid::composite_simpson(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_distance(grid, 16, 32));
}
BENCHMARK(BM_CauchyDistance)->Arg(4096)->Arg(16384);

static void BM_BuildEvalSpace(benchmark::State& state) {
  const int terms = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_eval_space(terms).dim());
}
BENCHMARK(BM_BuildEvalSpace)->Arg(16)->Arg(64)->Arg(256);
