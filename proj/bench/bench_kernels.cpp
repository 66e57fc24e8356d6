// Serial reference code paths against the OpenMP kernels.
#include <benchmark/benchmark.h>

#include "pi1scan/search.hpp"

using namespace pi1scan;

namespace {

const PureSet& pure6() {
  static const PureSet p = build_pure(6, SearchMode::Nontrivial);
  return p;
}

void BM_EnumerateSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::uint64_t c = 0;
    enumerate_2pure_serial(n, EnumFilter::SpanningConnected, [&](std::uint64_t) { ++c; });
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_EnumerateSerial)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_EnumerateParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_2pure(n, EnumFilter::SpanningConnected));
}
BENCHMARK(BM_EnumerateParallel)->Arg(6)->Unit(benchmark::kMillisecond);

// one unit: the full cone-extension tree of a single complex
void BM_ExtendReference(benchmark::State& state) {
  const std::uint64_t l = pure6().masks[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(extend_all_reference(7, l, SearchMode::Nontrivial).stats.cases);
}
BENCHMARK(BM_ExtendReference)->Arg(0)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_ExtendKernel(benchmark::State& state) {
  const std::uint64_t l = pure6().masks[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) {
    Pi1Kernel kernel;
    benchmark::DoNotOptimize(extend_all(kernel, 7, l, SearchMode::Nontrivial).stats.cases);
  }
}
BENCHMARK(BM_ExtendKernel)->Arg(0)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_RunReference(benchmark::State& state) {
  PureSet sample{6, SearchMode::Nontrivial, {}};
  for (std::size_t i = 0; i < pure6().masks.size(); i += 20) sample.masks.push_back(pure6().masks[i]);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_algorithm1_reference(sample, SearchMode::Nontrivial).stats.cases);
}
BENCHMARK(BM_RunReference)->Unit(benchmark::kMillisecond);

void BM_RunParallel(benchmark::State& state) {
  PureSet sample{6, SearchMode::Nontrivial, {}};
  for (std::size_t i = 0; i < pure6().masks.size(); i += 20) sample.masks.push_back(pure6().masks[i]);
  for (auto _ : state) benchmark::DoNotOptimize(run_algorithm1(sample, SearchMode::Nontrivial).stats.cases);
}
BENCHMARK(BM_RunParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
