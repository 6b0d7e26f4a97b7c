#include <benchmark/benchmark.h>

#include "latproj/cone_projection.hpp"
#include "latproj/property_harness.hpp"
#include "random_instances.hpp"

using namespace latproj;
using latproj::testing::Rng;

static void BM_ClosedForm(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Rng rng(1);
  const OrderedSpace os = testing::random_lattice_instance(rng, dim);
  const Vector x = testing::random_vector(rng, dim, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(project_closed_form(os, x).point.data());
}
BENCHMARK(BM_ClosedForm)->Arg(2)->Arg(8)->Arg(16);

static void BM_Dykstra(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Rng rng(2);
  const OrderedSpace os = testing::random_non_lattice_instance(rng, dim, false);
  const Vector x = testing::random_vector(rng, dim, 10.0);
  int cycles = 0;
  for (auto _ : state) {
    const ProjectionResult r = project_dykstra(os, x);
    cycles = r.iterations;
    benchmark::DoNotOptimize(r.point.data());
  }
  state.counters["cycles"] = cycles;
}
BENCHMARK(BM_Dykstra)->Arg(2)->Arg(8)->Arg(16);

static void BM_Certificate(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Rng rng(3);
  const OrderedSpace os = testing::random_lattice_instance(rng, dim);
  const Vector x = testing::random_vector(rng, dim, 10.0);
  const Vector p = pos_part(os.order(), x);
  for (auto _ : state) benchmark::DoNotOptimize(certificate_check(os, x, p, 1e-9).verdict);
}
BENCHMARK(BM_Certificate)->Arg(8)->Arg(16);

// One classify run; reported per trial.
static void BM_ClassifyTrials(benchmark::State& state) {
  Rng rng(4);
  const OrderedSpace os = testing::random_lattice_instance(rng, 5);
  TrialConfig cfg;
  cfg.trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify_instance(os, cfg).outcome);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClassifyTrials)->Arg(1000)->Unit(benchmark::kMillisecond);
