#include <benchmark/benchmark.h>

#include <random>

#include "cmtfa/certificate.hpp"
#include "cmtfa/solver.hpp"

using namespace cmtfa;

namespace {

// Dominant when `dominant` is set (head 0.95, small tail), otherwise iid
// magnitudes in (0.3, 0.7) which are non-dominant for n >= 3.
EdgeWeightVector make_alpha(std::size_t n, bool dominant) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.3, 0.7);
  std::vector<double> v(n);
  for (auto& x : v) x = dominant ? 0.9 / static_cast<double>(n) : u(rng);
  if (dominant) v[n / 2] = 0.95;
  return EdgeWeightVector(v);
}

void BM_Solve(benchmark::State& state) {
  const auto alpha = make_alpha(static_cast<std::size_t>(state.range(0)), state.range(1) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve(alpha));
}
BENCHMARK(BM_Solve)->ArgsProduct({{3, 8, 32, 64}, {0, 1}});

void BM_Certificate(benchmark::State& state) {
  const auto alpha = make_alpha(static_cast<std::size_t>(state.range(0)), state.range(1) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(build_certificate(alpha));
}
BENCHMARK(BM_Certificate)->ArgsProduct({{3, 8, 32, 64}, {0, 1}});

void BM_Verify(benchmark::State& state) {
  const auto alpha = make_alpha(static_cast<std::size_t>(state.range(0)), state.range(1) != 0);
  const auto sigma = build_star_covariance(alpha);
  const auto decomp = solve(alpha);
  const auto cert = build_certificate(alpha);
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(sigma, decomp, cert, 1e-8));
}
BENCHMARK(BM_Verify)->ArgsProduct({{3, 8, 32, 64}, {0, 1}});

}  // namespace
