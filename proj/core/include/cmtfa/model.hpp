#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cmtfa {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Latent-star edge weights alpha_1..alpha_n in user order.
///
/// Construction enforces n >= 2 and 0 < |alpha_i| < 1 for every entry; a
/// constructed value is therefore always a valid model parameter.
class EdgeWeightVector {
 public:
  explicit EdgeWeightVector(std::vector<double> entries);

  /// Parses a comma separated list such as "0.9,0.2,0.1".
  static EdgeWeightVector parse(std::string_view text);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }
  Vector as_vector() const;

  bool operator==(const EdgeWeightVector&) const = default;

 private:
  std::vector<double> entries_;
};

/// Magnitude-sorted view of an EdgeWeightVector.
///
/// permutation[k] is the original (0-based) index of sorted slot k and
/// magnitudes[k] = |alpha[permutation[k]]| is non-increasing. Ties keep the
/// lower original index first.
struct SortProfile {
  std::vector<std::size_t> permutation;
  std::vector<double> magnitudes;

  /// Signed entries in sorted order.
  std::vector<double> sorted_entries(const EdgeWeightVector& alpha) const;
};

/// Population covariance of the star model: unit diagonal, alpha_i alpha_j off
/// the diagonal.
class StarCovariance {
 public:
  /// Wraps an existing symmetric matrix. Used by the oracles and by tests
  /// that feed perturbed matrices; build_star_covariance is the normal path.
  explicit StarCovariance(Matrix matrix);

  const Matrix& matrix() const noexcept { return matrix_; }
  Eigen::Index size() const noexcept { return matrix_.rows(); }

 private:
  Matrix matrix_;
};

enum class Branch { Rank1, RankNMinus1, Boundary };

std::string_view to_string(Branch branch);
Branch branch_from_string(std::string_view name);

/// Sigma_x = sigma_t + diag(d) with sigma_t PSD and d >= 0.
struct FactorDecomposition {
  Matrix sigma_t;
  Vector d;
  Branch branch = Branch::Rank1;
  double trace_sigma_t = 0.0;
};

struct SampleBatch {
  Matrix observations;  // rows x n
  std::uint64_t seed = 0;
};

StarCovariance build_star_covariance(const EdgeWeightVector& alpha);

SortProfile sort_profile(const EdgeWeightVector& alpha);

/// Draws `rows` observations of X = alpha * Y + Z with Y ~ N(0, 1) and
/// Z_i ~ N(0, 1 - alpha_i^2). Row r depends only on (seed, r).
SampleBatch sample_star_model(const EdgeWeightVector& alpha, std::size_t rows,
                              std::uint64_t seed);

/// Unbiased sample covariance of a batch (used by tests and the CLI).
Matrix empirical_covariance(const SampleBatch& batch);

}  // namespace cmtfa
