#include "cmtfa/treesim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "cmtfa/dominance.hpp"
#include "cmtfa/errors.hpp"
#include "cmtfa/model.hpp"
#include "cmtfa/rng.hpp"

namespace cmtfa {
namespace {

constexpr std::size_t kMaxExactFactorial = 20;

double log_factorial(std::size_t n) {
  if (n <= kMaxExactFactorial) return std::log(static_cast<double>(factorial(n)));
  return std::lgamma(static_cast<double>(n) + 1.0);
}

Estimate make_estimate(std::size_t hits, std::size_t trials) {
  Estimate e;
  e.trials = trials;
  e.value = static_cast<double>(hits) / static_cast<double>(trials);
  e.half_width = 1.96 * std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
  return e;
}

// Draws n magnitudes from U(0, 1) and applies the exact (epsilon = 0)
// dominance test; any entry may turn out to be the largest.
template <typename Rng>
bool draw_nondominant(std::size_t n, Rng& rng, std::vector<double>& scratch) {
  scratch.resize(n);
  for (auto& v : scratch) v = uniform_open01(rng);
  return classify(EdgeWeightVector(scratch), 0.0).branch != Dominance::Dominant;
}

// Splits [0, trials) into contiguous chunks, one per worker, and returns
// the per-chunk results in chunk order. Each trial owns its RNG stream, so
// the aggregate does not depend on the thread count.
template <typename Result, typename Body>
std::vector<Result> run_chunked(std::size_t trials, Body body) {
  constexpr std::size_t kMinChunk = 4096;
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::clamp<std::size_t>(trials / kMinChunk, 1, hw);
  std::vector<Result> results(workers);
  const std::size_t per = (trials + workers - 1) / workers;
  auto task = [&](std::size_t w) {
    const std::size_t begin = std::min(trials, w * per);
    const std::size_t end = std::min(trials, begin + per);
    results[w] = body(begin, end);
  };
  if (workers == 1) {
    task(0);
    return results;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(task, w);
  pool.clear();
  return results;
}

}  // namespace

void validate(const ClusterSpec& spec) {
  if (spec.sizes.empty()) throw DomainError("cluster spec needs at least one cluster");
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    if (spec.sizes[i] < 2) {
      throw DomainError(fmt::format("cluster {} has {} observables; each needs at least 2",
                                    i + 1, spec.sizes[i]));
    }
  }
  if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
    throw DomainError(fmt::format("delta must lie in (0, 1), got {}", spec.delta));
  }
}

std::uint64_t factorial(std::size_t n) {
  if (n > kMaxExactFactorial) {
    throw DimensionError(fmt::format("{}! does not fit in 64 bits", n));
  }
  std::uint64_t out = 1;
  for (std::size_t k = 2; k <= n; ++k) out *= k;
  return out;
}

double prob_nondominant(std::size_t n) {
  if (n < 2) throw DomainError(fmt::format("a cluster needs n >= 2, got {}", n));
  if (n <= kMaxExactFactorial) return 1.0 - 1.0 / static_cast<double>(factorial(n));
  return 1.0 - std::exp(-log_factorial(n));
}

double prob_nondominant_symmetric(std::size_t n) {
  if (n < 2) throw DomainError(fmt::format("a cluster needs n >= 2, got {}", n));
  if (n - 1 <= kMaxExactFactorial) return 1.0 - 1.0 / static_cast<double>(factorial(n - 1));
  return 1.0 - std::exp(-log_factorial(n - 1));
}

Estimate mc_prob_nondominant(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 2) throw DomainError(fmt::format("a cluster needs n >= 2, got {}", n));
  if (trials == 0) throw DomainError("trials must be at least 1");
  const auto counts = run_chunked<std::size_t>(trials, [&](std::size_t begin, std::size_t end) {
    std::vector<double> scratch;
    std::size_t hits = 0;
    for (std::size_t t = begin; t < end; ++t) {
      CounterRng rng(seed, t);
      if (draw_nondominant(n, rng, scratch)) ++hits;
    }
    return hits;
  });
  return make_estimate(std::accumulate(counts.begin(), counts.end(), std::size_t{0}), trials);
}

DensityCheck density_sum_check(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 3) throw DimensionError(fmt::format("density check needs n >= 3, got {}", n));
  if (trials == 0) throw DomainError("trials must be at least 1");

  const auto parts =
      run_chunked<std::vector<double>>(trials, [&](std::size_t begin, std::size_t end) {
        std::vector<double> kept;
        std::vector<double> draw(n);
        for (std::size_t t = begin; t < end; ++t) {
          CounterRng rng(seed, t);
          double total = 0.0;
          for (auto& v : draw) {
            v = uniform_open01(rng);
            total += v;
          }
          for (double v : draw) {
            const double rest = total - v;
            if (rest < 1.0) kept.push_back(rest);
          }
        }
        return kept;
      });
  std::vector<double> accepted;
  for (const auto& part : parts) accepted.insert(accepted.end(), part.begin(), part.end());

  DensityCheck out;
  out.accepted = accepted.size();
  out.empirical_mass =
      static_cast<double>(accepted.size()) / static_cast<double>(trials * n);
  out.expected_mass = 1.0 / static_cast<double>(factorial(n - 1));
  if (accepted.empty()) {
    out.ks_deviation = 1.0;
    return out;
  }
  std::sort(accepted.begin(), accepted.end());
  const double count = static_cast<double>(accepted.size());
  const double power = static_cast<double>(n - 1);
  double worst = 0.0;
  for (std::size_t k = 0; k < accepted.size(); ++k) {
    const double model = std::pow(accepted[k], power);
    worst = std::max({worst, model - static_cast<double>(k) / count,
                      static_cast<double>(k + 1) / count - model});
  }
  out.ks_deviation = worst;
  return out;
}

TreeFeasibilityReport check_tree_feasibility(const ClusterSpec& spec,
                                             std::optional<std::size_t> mc_trials,
                                             std::uint64_t seed) {
  validate(spec);
  const double m = static_cast<double>(spec.sizes.size());

  TreeFeasibilityReport report;
  // 1 - delta^(1/m) without cancellation when delta^(1/m) is close to 1.
  const double gap = -std::expm1(std::log(spec.delta) / m);
  report.threshold = 1.0 / gap;
  report.log_threshold = -std::log(gap);

  std::vector<double> logs;
  logs.reserve(spec.sizes.size());
  for (auto n : spec.sizes) logs.push_back(log_factorial(n));
  const double log_max = *std::max_element(logs.begin(), logs.end());
  double scaled = 0.0;
  for (double l : logs) scaled += std::exp(l - log_max);
  report.log_mean_factorial = log_max + std::log(scaled) - std::log(m);
  report.log_min_factorial = *std::min_element(logs.begin(), logs.end());

  const std::size_t largest = *std::max_element(spec.sizes.begin(), spec.sizes.end());
  const double slack = 1.0 - kTreeGuardBand;
  if (largest <= kMaxExactFactorial) {
    long double sum = 0.0L;
    for (auto n : spec.sizes) sum += static_cast<long double>(factorial(n));
    const long double mean = sum / static_cast<long double>(spec.sizes.size());
    const std::size_t smallest = *std::min_element(spec.sizes.begin(), spec.sizes.end());
    report.necessary_holds = mean >= static_cast<long double>(report.threshold * slack);
    report.sufficient_holds =
        static_cast<double>(factorial(smallest)) >= report.threshold * slack;
  } else {
    const double log_slack = std::log1p(-kTreeGuardBand);
    report.necessary_holds = report.log_mean_factorial >= report.log_threshold + log_slack;
    report.sufficient_holds = report.log_min_factorial >= report.log_threshold + log_slack;
  }

  report.exact_joint_probability = 1.0;
  report.symmetric_joint_probability = 1.0;
  for (auto n : spec.sizes) {
    report.exact_joint_probability *= prob_nondominant(n);
    report.symmetric_joint_probability *= prob_nondominant_symmetric(n);
  }

  if (mc_trials) {
    if (*mc_trials == 0) throw DomainError("mc trials must be at least 1");
    const auto counts =
        run_chunked<std::size_t>(*mc_trials, [&](std::size_t begin, std::size_t end) {
          std::vector<double> scratch;
          std::size_t hits = 0;
          for (std::size_t t = begin; t < end; ++t) {
            CounterRng rng(seed, t);
            bool all = true;
            // Draw every cluster so each trial consumes the same stream layout.
            for (auto n : spec.sizes) all = draw_nondominant(n, rng, scratch) && all;
            if (all) ++hits;
          }
          return hits;
        });
    report.mc_estimate =
        make_estimate(std::accumulate(counts.begin(), counts.end(), std::size_t{0}), *mc_trials);
  }
  return report;
}

}  // namespace cmtfa
