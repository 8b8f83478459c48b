#include "rmq/distortion.hpp"
#include "rmq/normal_quantizer.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>
#include <vector>

namespace {

// Mixture with one component per point of an N-grid, as in a tree level.
rmq::GaussianMixture level_law(std::size_t n) {
  const auto& q = rmq::cached_std_normal_quantizer(n);
  std::vector<rmq::Component> comps;
  comps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    comps.push_back({q.points[i] * 1.02, 0.09, q.weights[i]});
  }
  return rmq::GaussianMixture(std::move(comps));
}

void BM_Evaluate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto law = level_law(n);
  const rmq::Grid grid(rmq::cached_std_normal_quantizer(n).points);
  rmq::EngineOptions opts;
  if (state.range(1) == 0) opts.tail_cutoff = std::numeric_limits<double>::infinity();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmq::evaluate(law, grid, opts));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Evaluate)
    ->ArgsProduct({{50, 100, 200, 400, 800}, {0, 1}})
    ->ArgNames({"N", "cutoff"});

void BM_NewtonSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto law = level_law(n);
  const rmq::Grid start(rmq::cached_std_normal_quantizer(n).points);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmq::newton_solve(law, start));
  }
}
BENCHMARK(BM_NewtonSolve)->Arg(100)->Arg(400);

}  // namespace
