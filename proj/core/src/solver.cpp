#include "cmtfa/solver.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cmtfa/errors.hpp"

namespace cmtfa {
namespace {

FactorDecomposition finish(Matrix sigma_t, Branch branch) {
  FactorDecomposition out;
  out.d = Vector::Ones(sigma_t.rows()) - sigma_t.diagonal();
  out.trace_sigma_t = sigma_t.trace();
  out.sigma_t = std::move(sigma_t);
  out.branch = branch;
  return out;
}

// Off-diagonal part shared by both closed forms.
Matrix outer(const EdgeWeightVector& alpha) {
  const Vector a = alpha.as_vector();
  return a * a.transpose();
}

}  // namespace

FactorDecomposition solve_rank1(const EdgeWeightVector& alpha, double epsilon) {
  const auto verdict = classify(alpha, epsilon);
  if (verdict.branch == Dominance::Dominant) {
    throw BranchMismatch(fmt::format(
        "rank-1 solution is not optimal for a dominant alpha (margin {})",
        verdict.margin));
  }
  return finish(outer(alpha), verdict.branch == Dominance::Boundary ? Branch::Boundary
                                                                    : Branch::Rank1);
}

FactorDecomposition solve_rank1(const EdgeWeightVector& alpha) {
  return solve_rank1(alpha, default_boundary_tolerance(alpha.size()));
}

FactorDecomposition solve_rank_n_minus_1(const EdgeWeightVector& alpha,
                                         double epsilon) {
  const auto verdict = classify(alpha, epsilon);
  if (verdict.branch == Dominance::NonDominant) {
    throw BranchMismatch(fmt::format(
        "rank n-1 solution requires a dominant alpha (margin {})", verdict.margin));
  }

  const SortProfile profile = sort_profile(alpha);
  const auto& m = profile.magnitudes;
  const double top = m.front();
  double tail = 0.0;
  for (std::size_t k = 1; k < m.size(); ++k) tail += m[k];

  Matrix sigma_t = outer(alpha);
  const auto head = static_cast<Eigen::Index>(profile.permutation.front());
  sigma_t(head, head) = top * tail;
  for (std::size_t k = 1; k < m.size(); ++k) {
    // |alpha_(k)| * (|alpha_(1)| - sum_{j != k, j >= 2} |alpha_(j)|)
    const double others = tail - m[k];
    const auto i = static_cast<Eigen::Index>(profile.permutation[k]);
    sigma_t(i, i) = m[k] * (top - others);
  }
  return finish(std::move(sigma_t), verdict.branch == Dominance::Boundary
                                        ? Branch::Boundary
                                        : Branch::RankNMinus1);
}

FactorDecomposition solve_rank_n_minus_1(const EdgeWeightVector& alpha) {
  return solve_rank_n_minus_1(alpha, default_boundary_tolerance(alpha.size()));
}

FactorDecomposition solve(const EdgeWeightVector& alpha, double epsilon) {
  if (classify(alpha, epsilon).branch == Dominance::Dominant) {
    return solve_rank_n_minus_1(alpha, epsilon);
  }
  return solve_rank1(alpha, epsilon);
}

FactorDecomposition solve(const EdgeWeightVector& alpha) {
  return solve(alpha, default_boundary_tolerance(alpha.size()));
}

double trace_advantage(const EdgeWeightVector& alpha, double epsilon) {
  const auto verdict = classify(alpha, epsilon);
  if (verdict.branch == Dominance::NonDominant) {
    throw BranchMismatch(fmt::format(
        "trace advantage is defined for dominant alpha only (margin {})",
        verdict.margin));
  }
  const SortProfile profile = sort_profile(alpha);
  const double top = profile.magnitudes.front();
  double tail = 0.0;
  for (std::size_t k = 1; k < profile.magnitudes.size(); ++k) tail += profile.magnitudes[k];
  // a * (a - 2s) + s^2 written as a square: no cancellation below zero near
  // the boundary.
  const double gap = top - tail;
  return gap * gap;
}

double trace_advantage(const EdgeWeightVector& alpha) {
  return trace_advantage(alpha, default_boundary_tolerance(alpha.size()));
}

}  // namespace cmtfa
