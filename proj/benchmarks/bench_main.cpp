#include <benchmark/benchmark.h>

#include "jmetric/catalog.hpp"
#include "jmetric/classify.hpp"
#include "jmetric/connection.hpp"
#include "jmetric/fiber_algebra.hpp"

using namespace jmetric;

static void BM_DeriveTensorsS6(benchmark::State& state) {
  const ChartedManifold m = catalog("s6-nearly-kahler");
  const std::vector<double> p{0.1, -0.2, 0.3, 0.05, -0.15, 0.25};
  for (auto _ : state) benchmark::DoNotOptimize(derive_tensors(m, p));
}
BENCHMARK(BM_DeriveTensorsS6);

static void BM_DeriveTensorsRandom(benchmark::State& state) {
  const ChartedManifold m = catalog("random-norden-42");
  const std::vector<double> p{0.1, -0.2, 0.3, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(derive_tensors(m, p));
}
BENCHMARK(BM_DeriveTensorsRandom);

static void BM_NullSpaceW(benchmark::State& state) {
  const ModelFiber f = ModelFiber::standard(kHermitian, static_cast<int>(state.range(0)));
  const LinearConstraintSystem sys = build_constraints(f, kQueryW);
  for (auto _ : state) benchmark::DoNotOptimize(null_space(sys));
}
BENCHMARK(BM_NullSpaceW)->DenseRange(1, 3);

static void BM_ExactRankW(benchmark::State& state) {
  const ModelFiber f = ModelFiber::standard(kNorden, static_cast<int>(state.range(0)));
  const LinearConstraintSystem sys = build_constraints(f, kQueryW1);
  for (auto _ : state) benchmark::DoNotOptimize(exact_rank(sys));
}
BENCHMARK(BM_ExactRankW)->DenseRange(1, 3);

static void BM_ClassifyS6(benchmark::State& state) {
  const ChartedManifold m = catalog("s6-nearly-kahler");
  for (auto _ : state) benchmark::DoNotOptimize(measure_classes(m, SamplePlan{0, 10, 10}));
}
BENCHMARK(BM_ClassifyS6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
