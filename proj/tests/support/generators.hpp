#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "cmtfa/model.hpp"
#include "cmtfa/treesim.hpp"

namespace cmtfa::testgen {

// Seeded generators for property tests. Everything is driven by one
// mt19937_64 so a failing case can be replayed from the seed alone.
class AlphaGen {
 public:
  explicit AlphaGen(std::uint64_t seed) : rng_(seed) {}

  // iid magnitudes in (0.02, 0.98) with random signs.
  EdgeWeightVector any(std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = signed_value(uniform(0.02, 0.98));
    return EdgeWeightVector(std::move(v));
  }

  // Largest magnitude exceeds the tail sum by a margin of at least 0.01;
  // the dominant entry lands at a random position.
  EdgeWeightVector dominant(std::size_t n) {
    const double budget = uniform(0.05, 0.9);
    std::vector<double> w(n - 1);
    for (auto& x : w) x = uniform(0.1, 1.0);
    double total = 0.0;
    for (double x : w) total += x;
    std::vector<double> v;
    double tail = 0.0;
    for (double x : w) {
      const double m = std::max(0.005, budget * x / total);
      tail += m;
      v.push_back(signed_value(m));
    }
    const double head = std::min(0.99, tail + uniform(0.01, std::max(0.011, 0.99 - tail)));
    v.push_back(signed_value(head));
    std::shuffle(v.begin(), v.end(), rng_);
    return EdgeWeightVector(std::move(v));
  }

  // Half dominant, half iid; iid draws for n >= 4 are almost never
  // dominant so the constructed half keeps both branches covered.
  EdgeWeightVector mixed(std::size_t n) { return coin() ? dominant(n) : any(n); }

  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  bool coin() { return std::bernoulli_distribution(0.5)(rng_); }

  ClusterSpec cluster_spec(std::size_t max_m, std::size_t max_n, double delta_lo,
                           double delta_hi) {
    ClusterSpec spec;
    const std::size_t m = size(1, max_m);
    for (std::size_t i = 0; i < m; ++i) spec.sizes.push_back(size(2, max_n));
    spec.delta = uniform(delta_lo, delta_hi);
    return spec;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  double signed_value(double magnitude) { return coin() ? magnitude : -magnitude; }

  std::mt19937_64 rng_;
};

// CMTFA optimum traces from an interior-point SDP solve (maximise sum(d)
// subject to Sigma_x - diag(d) PSD, d >= 0; duality gap <= 1e-12), frozen
// here so the closed form is checked against something it did not produce.
struct ReferenceCase {
  std::vector<double> alpha;
  double trace;
};

inline const std::vector<ReferenceCase>& sdp_reference_cases() {
  static const std::vector<ReferenceCase> cases = {
      {{0.9, 0.2, 0.1}, 0.5000000000002047},
      {{0.5, 0.4, 0.3}, 0.4999999999998641},
      {{0.7, 0.4, 0.3}, 0.7399999999999194},
      {{-0.6, 0.5, 0.45, 0.3}, 0.9024999999998622},
      {{0.9, -0.2, 0.1, 0.05, 0.3}, 0.8899999999999624},
      {{0.3, 0.8, 0.6, 0.7, 0.2}, 1.6199999999851507},
      {{0.95, 0.3, -0.25, 0.2}, 1.055000000000014},
      {{0.2, -0.85, 0.1, 0.15, 0.05, 0.2}, 0.8149999999999524},
      {{0.6, 0.6, 0.6}, 1.0799999999998193},
      {{0.99, 0.01, 0.02}, 0.059000000000204},
  };
  return cases;
}

}  // namespace cmtfa::testgen
