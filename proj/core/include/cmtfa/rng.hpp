#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace cmtfa {

/// Counter-based generator: the k-th output of stream s under seed `seed`
/// is a fixed function of (seed, s, k). Each Monte Carlo row or trial gets
/// its own stream, so results do not depend on evaluation order.
///
/// Internally a SplitMix64 sequence whose starting state is a hash of the
/// (seed, stream) pair. Satisfies UniformRandomBitGenerator so it plugs into
/// the <random> distributions.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : state_(mix(seed ^ mix(stream + kGolden))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    state_ += kGolden;
    return mix(state_);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

/// Uniform draw on the open interval (0, 1).
template <typename Rng>
double uniform_open01(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  while (u == 0.0) u = unit(rng);
  return u;
}

}  // namespace cmtfa
