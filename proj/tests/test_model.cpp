#include <gtest/gtest.h>

#include <cmath>

#include "cmtfa/errors.hpp"
#include "cmtfa/linalg.hpp"
#include "cmtfa/model.hpp"
#include "support/generators.hpp"

using namespace cmtfa;

TEST(EdgeWeightVector, RejectsOutOfRangeEntries) {
  EXPECT_THROW(EdgeWeightVector({0.5, 1.0}), DomainError);
  EXPECT_THROW(EdgeWeightVector({0.5, -1.0}), DomainError);
  EXPECT_THROW(EdgeWeightVector({0.5, 0.0}), DomainError);
  EXPECT_THROW(EdgeWeightVector({0.5}), DomainError);
  EXPECT_THROW(EdgeWeightVector({0.5, std::nan("")}), DomainError);
  EXPECT_NO_THROW(EdgeWeightVector({-0.999, 0.001}));
}

TEST(EdgeWeightVector, ErrorNamesOffendingEntry) {
  try {
    EdgeWeightVector({0.5, 1.0});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos) << e.what();
  }
}

TEST(EdgeWeightVector, ParsesCommaList) {
  const auto a = EdgeWeightVector::parse("0.9, -0.2,+0.1");
  ASSERT_EQ(a.size(), 3u);
  EXPECT_DOUBLE_EQ(a[0], 0.9);
  EXPECT_DOUBLE_EQ(a[1], -0.2);
  EXPECT_DOUBLE_EQ(a[2], 0.1);
  EXPECT_THROW(EdgeWeightVector::parse("0.9,abc"), DomainError);
  EXPECT_THROW(EdgeWeightVector::parse("0.9,,0.1"), DomainError);
  EXPECT_THROW(EdgeWeightVector::parse(""), DomainError);
}

TEST(StarCovariance, SymmetricPair) {
  const Matrix s = build_star_covariance(EdgeWeightVector({0.5, 0.5})).matrix();
  EXPECT_DOUBLE_EQ(s(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(s(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(s(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(s(1, 0), 0.25);
}

TEST(StarCovariance, OffDiagonalProducts) {
  const Matrix s = build_star_covariance(EdgeWeightVector({0.9, 0.2, 0.1})).matrix();
  EXPECT_DOUBLE_EQ(s(0, 1), 0.9 * 0.2);
  EXPECT_DOUBLE_EQ(s(0, 2), 0.9 * 0.1);
  EXPECT_DOUBLE_EQ(s(1, 2), 0.2 * 0.1);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(s(i, i), 1.0);
}

TEST(StarCovariance, RejectsNonSquare) {
  EXPECT_THROW(StarCovariance(Matrix::Zero(2, 3)), ShapeMismatch);
}

TEST(StarCovariance, RankOnePlusDiagonalIdentity) {
  testgen::AlphaGen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto alpha = gen.any(gen.size(2, 10));
    const Vector a = alpha.as_vector();
    Matrix s = build_star_covariance(alpha).matrix();
    s.diagonal() -= (Vector::Ones(a.size()) - a.cwiseAbs2());
    EXPECT_LE(linalg::max_abs_diff(s, a * a.transpose()), 1e-15);
  }
}

TEST(StarCovariance, PermutationEquivariant) {
  testgen::AlphaGen gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = gen.size(2, 8);
    const auto alpha = gen.any(n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    std::vector<double> shuffled(n);
    for (std::size_t i = 0; i < n; ++i) shuffled[i] = alpha[perm[i]];
    const Matrix a = build_star_covariance(alpha).matrix();
    const Matrix b = build_star_covariance(EdgeWeightVector(shuffled)).matrix();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(b(i, j), a(perm[i], perm[j]));
  }
}

TEST(StarCovariance, PositiveDefinite) {
  testgen::AlphaGen gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto alpha = gen.any(gen.size(2, 10));
    EXPECT_GT(linalg::lambda_min(build_star_covariance(alpha).matrix()), 0.0);
  }
}

TEST(SortProfile, OrdersByMagnitude) {
  const auto p = sort_profile(EdgeWeightVector({0.2, 0.9, 0.1}));
  EXPECT_EQ(p.permutation, (std::vector<std::size_t>{1, 0, 2}));
  EXPECT_EQ(p.magnitudes, (std::vector<double>{0.9, 0.2, 0.1}));
}

TEST(SortProfile, TiesKeepLowerIndexFirst) {
  const auto a = sort_profile(EdgeWeightVector({-0.4, 0.4}));
  EXPECT_EQ(a.permutation[0], 0u);
  EXPECT_EQ(a.magnitudes, (std::vector<double>{0.4, 0.4}));
  const auto b = sort_profile(EdgeWeightVector({0.3, 0.5, 0.5}));
  EXPECT_EQ(b.permutation, (std::vector<std::size_t>{1, 2, 0}));
}

TEST(SortProfile, PermutationRoundTrips) {
  testgen::AlphaGen gen(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto alpha = gen.any(gen.size(2, 9));
    const auto p = sort_profile(alpha);
    const auto sorted = p.sorted_entries(alpha);
    std::vector<double> back(alpha.size());
    for (std::size_t k = 0; k < alpha.size(); ++k) back[p.permutation[k]] = sorted[k];
    EXPECT_EQ(EdgeWeightVector(back), alpha);
    for (std::size_t k = 0; k + 1 < alpha.size(); ++k)
      EXPECT_GE(p.magnitudes[k], p.magnitudes[k + 1]);
  }
}

TEST(Sampling, EmpiricalCovarianceConverges) {
  const EdgeWeightVector alpha({0.9, 0.2, 0.1});
  const auto batch = sample_star_model(alpha, 200000, 5);
  ASSERT_EQ(batch.observations.rows(), 200000);
  ASSERT_EQ(batch.observations.cols(), 3);
  const Matrix emp = empirical_covariance(batch);
  EXPECT_LE(linalg::max_abs_diff(emp, build_star_covariance(alpha).matrix()), 0.01);
}

TEST(Sampling, SingleRowIsFinite) {
  const auto batch = sample_star_model(EdgeWeightVector({0.3, -0.7, 0.5, 0.2}), 1, 9);
  ASSERT_EQ(batch.observations.rows(), 1);
  ASSERT_EQ(batch.observations.cols(), 4);
  EXPECT_TRUE(batch.observations.allFinite());
}

TEST(Sampling, SeedDeterminesBatch) {
  const EdgeWeightVector alpha({0.6, 0.5, 0.4});
  const auto a = sample_star_model(alpha, 500, 42);
  const auto b = sample_star_model(alpha, 500, 42);
  const auto c = sample_star_model(alpha, 500, 43);
  EXPECT_EQ(a.observations, b.observations);
  EXPECT_NE(a.observations, c.observations);
  // Row r depends only on (seed, r): a shorter batch is a prefix.
  const auto prefix = sample_star_model(alpha, 100, 42);
  EXPECT_EQ(prefix.observations, a.observations.topRows(100));
}

TEST(Branch, StringRoundTrip) {
  for (auto b : {Branch::Rank1, Branch::RankNMinus1, Branch::Boundary})
    EXPECT_EQ(branch_from_string(to_string(b)), b);
  EXPECT_THROW(branch_from_string("Rank2"), DomainError);
}
