#include "rmq/tree.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

void BM_BuildTree(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t steps = 24;
  std::vector<std::size_t> sizes(steps + 1, n);
  sizes[0] = 1;
  const auto model = rmq::models::black_scholes(0.15, 0.3);
  rmq::BuildStats stats;
  for (auto _ : state) {
    stats = {};
    benchmark::DoNotOptimize(rmq::build_tree(model, 100.0, 1.0, steps, sizes, {}, &stats));
  }
  state.counters["pairs"] = static_cast<double>(stats.pair_evaluations);
  state.counters["passes"] = static_cast<double>(stats.passes);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildTree)->RangeMultiplier(2)->Range(25, 400)->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNSquared);

}  // namespace
