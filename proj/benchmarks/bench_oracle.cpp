#include <benchmark/benchmark.h>

#include "cmtfa/oracle.hpp"

using namespace cmtfa;

namespace {

const EdgeWeightVector& alpha_for(std::int64_t n) {
  static const EdgeWeightVector three({0.9, 0.2, 0.1});
  static const EdgeWeightVector four({0.95, 0.3, -0.25, 0.2});
  static const EdgeWeightVector six({0.2, -0.85, 0.1, 0.15, 0.05, 0.2});
  return n == 3 ? three : n == 4 ? four : six;
}

void BM_GridOracle(benchmark::State& state) {
  const auto sigma = build_star_covariance(alpha_for(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_cmtfa(sigma, 0.05, 3));
}
BENCHMARK(BM_GridOracle)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DescentOracle(benchmark::State& state) {
  const auto sigma = build_star_covariance(alpha_for(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(projected_descent_cmtfa(sigma, 1.0, 4000, 0));
}
BENCHMARK(BM_DescentOracle)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

}  // namespace
