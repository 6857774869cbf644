#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cmtfa {

/// m clusters of sizes n_1..n_m that must all be non-dominant with
/// probability at least delta.
struct ClusterSpec {
  std::vector<std::size_t> sizes;
  double delta = 0.5;
};

/// Throws DomainError unless m >= 1, every n_i >= 2 and 0 < delta < 1.
void validate(const ClusterSpec& spec);

struct Estimate {
  double value = 0.0;
  double half_width = 0.0;  // 95% normal approximation
  std::size_t trials = 0;
};

/// Relative slack applied to the factorial inequalities so representation
/// noise cannot flip a verdict.
inline constexpr double kTreeGuardBand = 1e-12;

struct TreeFeasibilityReport {
  bool necessary_holds = false;
  bool sufficient_holds = false;
  double exact_joint_probability = 0.0;
  // prod(1 - 1/(n_i - 1)!), the law the Monte Carlo estimate follows.
  double symmetric_joint_probability = 0.0;
  double threshold = 0.0;       // 1 / (1 - delta^(1/m))
  double log_threshold = 0.0;
  double log_mean_factorial = 0.0;
  double log_min_factorial = 0.0;
  double guard_band = kTreeGuardBand;
  std::optional<Estimate> mc_estimate;
};

/// n! for n <= 20, exactly.
std::uint64_t factorial(std::size_t n);

/// The closed form 1 - 1/n!. Note this is the chance that one fixed
/// position is not dominant; see prob_nondominant_symmetric.
double prob_nondominant(std::size_t n);

/// 1 - 1/(n-1)!: probability that n iid U(0,1) magnitudes are non-dominant
/// when any position may dominate. The n events "entry i exceeds the sum of
/// the rest" are disjoint and each has mass 1/n!.
double prob_nondominant_symmetric(std::size_t n);

/// Monte Carlo estimate of the non-dominance probability, any position
/// allowed to dominate. Trial t uses stream t of the seed, so the estimate
/// is reproducible and order independent.
Estimate mc_prob_nondominant(std::size_t n, std::size_t trials, std::uint64_t seed);

struct DensityCheck {
  double ks_deviation = 0.0;  // sup |F_emp(t) - t^(n-1)| on (0, 1)
  double empirical_mass = 0.0;
  double expected_mass = 0.0;  // 1 / (n-1)!
  std::size_t accepted = 0;
};

/// Kolmogorov-Smirnov check of the law of S_i = sum_{j != i} |alpha_j|
/// restricted to (0, 1), whose normalised CDF there is t^(n-1). Each trial
/// contributes every S_i that lands below 1. Requires n >= 3.
DensityCheck density_sum_check(std::size_t n, std::size_t trials, std::uint64_t seed);

/// Evaluates the necessary (mean of n_i!) and sufficient (min n_i!)
/// factorial conditions, the exact joint probability prod(1 - 1/n_i!) and
/// optionally a joint Monte Carlo estimate.
TreeFeasibilityReport check_tree_feasibility(const ClusterSpec& spec,
                                             std::optional<std::size_t> mc_trials,
                                             std::uint64_t seed);

}  // namespace cmtfa
