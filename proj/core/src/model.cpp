#include "cmtfa/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <fmt/format.h>

#include "cmtfa/errors.hpp"
#include "cmtfa/rng.hpp"

namespace cmtfa {

EdgeWeightVector::EdgeWeightVector(std::vector<double> entries)
    : entries_(std::move(entries)) {
  if (entries_.size() < 2) {
    throw DomainError(fmt::format("alpha needs at least 2 entries, got {}",
                                  entries_.size()));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double a = entries_[i];
    if (!std::isfinite(a) || !(std::abs(a) > 0.0) || !(std::abs(a) < 1.0)) {
      throw DomainError(fmt::format(
          "alpha entry {} = {} violates 0 < |alpha| < 1", i + 1, a));
    }
  }
}

EdgeWeightVector EdgeWeightVector::parse(std::string_view text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    // from_chars rejects a leading '+', which users do type.
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
      throw DomainError(fmt::format("cannot parse alpha entry {} ('{}')",
                                    values.size() + 1, std::string(token)));
    }
    values.push_back(value);
    pos = comma + 1;
  }
  return EdgeWeightVector(std::move(values));
}

Vector EdgeWeightVector::as_vector() const {
  return Eigen::Map<const Vector>(entries_.data(),
                                  static_cast<Eigen::Index>(entries_.size()));
}

std::vector<double> SortProfile::sorted_entries(const EdgeWeightVector& alpha) const {
  std::vector<double> out(permutation.size());
  for (std::size_t k = 0; k < permutation.size(); ++k) out[k] = alpha[permutation[k]];
  return out;
}

StarCovariance::StarCovariance(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw ShapeMismatch(fmt::format("covariance must be square, got {}x{}",
                                    matrix_.rows(), matrix_.cols()));
  }
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::Rank1: return "Rank1";
    case Branch::RankNMinus1: return "RankNMinus1";
    case Branch::Boundary: return "Boundary";
  }
  return "Rank1";
}

Branch branch_from_string(std::string_view name) {
  if (name == "Rank1") return Branch::Rank1;
  if (name == "RankNMinus1") return Branch::RankNMinus1;
  if (name == "Boundary") return Branch::Boundary;
  throw DomainError(fmt::format("unknown branch '{}'", std::string(name)));
}

StarCovariance build_star_covariance(const EdgeWeightVector& alpha) {
  const Vector a = alpha.as_vector();
  Matrix sigma = a * a.transpose();
  sigma.diagonal().setOnes();
  return StarCovariance(std::move(sigma));
}

SortProfile sort_profile(const EdgeWeightVector& alpha) {
  SortProfile profile;
  profile.permutation.resize(alpha.size());
  std::iota(profile.permutation.begin(), profile.permutation.end(), std::size_t{0});
  std::stable_sort(profile.permutation.begin(), profile.permutation.end(),
                   [&](std::size_t i, std::size_t j) {
                     return std::abs(alpha[i]) > std::abs(alpha[j]);
                   });
  profile.magnitudes.reserve(alpha.size());
  for (auto i : profile.permutation) profile.magnitudes.push_back(std::abs(alpha[i]));
  return profile;
}

SampleBatch sample_star_model(const EdgeWeightVector& alpha, std::size_t rows,
                              std::uint64_t seed) {
  if (rows == 0) throw DomainError("sample count must be at least 1");
  const auto n = static_cast<Eigen::Index>(alpha.size());
  std::vector<double> noise_sd(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    noise_sd[i] = std::sqrt(1.0 - alpha[i] * alpha[i]);
  }

  SampleBatch batch;
  batch.seed = seed;
  batch.observations.resize(static_cast<Eigen::Index>(rows), n);
  for (std::size_t r = 0; r < rows; ++r) {
    CounterRng rng(seed, r);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double y = normal(rng);
    for (Eigen::Index i = 0; i < n; ++i) {
      batch.observations(static_cast<Eigen::Index>(r), i) =
          alpha[static_cast<std::size_t>(i)] * y +
          noise_sd[static_cast<std::size_t>(i)] * normal(rng);
    }
  }
  return batch;
}

Matrix empirical_covariance(const SampleBatch& batch) {
  const Matrix& x = batch.observations;
  if (x.rows() < 2) throw DimensionError("need at least 2 rows for a covariance");
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Matrix centered = x.rowwise() - mean;
  return (centered.transpose() * centered) / static_cast<double>(x.rows() - 1);
}

}  // namespace cmtfa
