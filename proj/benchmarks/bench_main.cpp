#include <benchmark/benchmark.h>

#include <cmath>

#include "diagcorr/combinatorial_oracle.hpp"
#include "diagcorr/curie_weiss.hpp"
#include "diagcorr/field_sampler.hpp"
#include "diagcorr/partitions.hpp"
#include "diagcorr/spectra.hpp"
#include "diagcorr/toeplitz_volume.hpp"

using namespace diagcorr;

static void BM_ToeplitzVolume(benchmark::State& state) {
  const auto p = PairPartition::parse("1-4,2-5,3-6");
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_volume(p, samples, 1).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ToeplitzVolume)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_BuildMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DiagonalSampler sampler(GeneratorSpec::curie_weiss(2.0, 3), n);
  std::uint64_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_matrix(n, sampler, r++).packed().data());
}
BENCHMARK(BM_BuildMatrix)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_Eigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = build_matrix(n, GeneratorSpec::independent(5), 0);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_symmetric(m).eigenvalues.data());
}
BENCHMARK(BM_Eigenvalues)->Arg(100)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_TraceMomentDirect(benchmark::State& state) {
  const auto m = build_matrix(static_cast<int>(state.range(0)), GeneratorSpec::toeplitz(5), 0);
  for (auto _ : state) benchmark::DoNotOptimize(trace_moment_direct(m, 12));
}
BENCHMARK(BM_TraceMomentDirect)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_ClassifyTuples(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(classify_tuples(n, k).pair_partition_walks);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(std::pow(n, k)));
}
BENCHMARK(BM_ClassifyTuples)->Args({40, 4})->Args({10, 6})->Args({16, 6})->Unit(benchmark::kMillisecond);

static void BM_ExactCn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_cn({2.0, n}));
}
BENCHMARK(BM_ExactCn)->Arg(1600)->Arg(100'000)->Unit(benchmark::kMicrosecond);

static void BM_EnumeratePartitions(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_pair_partitions(12).size());
}
BENCHMARK(BM_EnumeratePartitions)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
