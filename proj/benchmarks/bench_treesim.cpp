#include <benchmark/benchmark.h>

#include "cmtfa/treesim.hpp"

using namespace cmtfa;

namespace {

void BM_MonteCarlo(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_prob_nondominant(n, 100000, 1));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_MonteCarlo)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_DensityCheck(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(density_sum_check(n, 100000, 1));
}
BENCHMARK(BM_DensityCheck)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_TreeCheck(benchmark::State& state) {
  const ClusterSpec spec{{4, 5, 6, 7, 25}, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(check_tree_feasibility(spec, std::nullopt, 0));
}
BENCHMARK(BM_TreeCheck);

}  // namespace
