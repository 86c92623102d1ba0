#include <benchmark/benchmark.h>

#include "rwc/rwc.hpp"

namespace {

using namespace rwc;

void BM_Philox(benchmark::State& state) {
  std::uint32_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Philox4x32::apply({i++, 0, 0, 0}, {1, 2}));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Philox);

void BM_NearestNeighborTotal(benchmark::State& state) {
  ModelParams params;
  params.n = static_cast<int>(state.range(0));
  params.d = static_cast<int>(state.range(1));
  params.dist = WeightDistribution::exponential(params.n);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(nn_total(PairedSample(params, seed++)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(binomial(params.n, params.d + 1)));
}
BENCHMARK(BM_NearestNeighborTotal)->Args({200, 1})->Args({80, 2})->Unit(benchmark::kMillisecond);

void BM_SampleSparse(benchmark::State& state) {
  const auto params = ModelParams::from_lambda(static_cast<int>(state.range(0)), 2, 2.0, WeightDistribution::constant(1));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_complex(params, seed++));
}
BENCHMARK(BM_SampleSparse)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_CocycleCount(benchmark::State& state) {
  const auto params = ModelParams::from_lambda(static_cast<int>(state.range(0)), 2, 2.0, WeightDistribution::constant(1));
  const auto x = sample_complex(params, 1);
  for (auto _ : state) benchmark::DoNotOptimize(cocycle_count_bounded(x, 5));
}
BENCHMARK(BM_CocycleCount)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_Components(benchmark::State& state) {
  const auto params = ModelParams::from_lambda(static_cast<int>(state.range(0)), 2, 2.0, WeightDistribution::constant(1));
  const auto x = sample_complex(params, 2);
  for (auto _ : state) benchmark::DoNotOptimize(components(x));
}
BENCHMARK(BM_Components)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_RankPrimeField(benchmark::State& state) {
  const auto params = ModelParams::from_lambda(14, 2, 4.0, WeightDistribution::constant(1));
  const auto m = CoboundaryMatrix::from_complex(sample_complex(params, 3));
  for (auto _ : state) benchmark::DoNotOptimize(rank_pm1(m));
}
BENCHMARK(BM_RankPrimeField);

void BM_DeltaTilde(benchmark::State& state) {
  const auto params = ModelParams::from_lambda(20, 2, 2.0, WeightDistribution::constant(1));
  const CocycleCount f(3);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_delta_tilde(f, params, 2, 16, seed++));
}
BENCHMARK(BM_DeltaTilde)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
