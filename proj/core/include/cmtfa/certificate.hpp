#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cmtfa/model.hpp"

namespace cmtfa {

/// Null-space witness for the CMTFA optimality conditions.
///
/// Every column of `witness` lies in the null space of Sigma_x - D and, for
/// each row j, ||witness.row(j)||^2 - mu_j = 1 where mu_j >= 0 is only
/// allowed on indices with d_j = 0.
struct OptimalityCertificate {
  Matrix witness;                          // n x r
  std::map<std::size_t, double> multipliers;  // j -> mu_j

  Eigen::Index columns() const noexcept { return witness.cols(); }
};

/// Diagonal of beta = B B' plus the sign vector c_2..c_n, in sorted order.
struct BetaDiagonal {
  Vector beta;   // length n; beta(n-1) is beta_nn
  Vector signs;  // length n-1; signs(k-1) is c_{k+1}
  /// True when c_k alpha_(k) = |alpha_(k)| for every k. False when the
  /// balancing choice was needed because alpha_(1)^2 < sum_{k>=2} alpha_(k)^2.
  bool entry_signs = true;
};

/// Sign vector c used by both the null basis and beta (sorted view).
Vector null_basis_signs(const EdgeWeightVector& alpha);

/// n x n matrix V whose columns span the null space of alpha alpha'.
///
/// In the sorted view column k (k < n-1) is e_{k+1} - (alpha_(k+1)/alpha_(1))
/// e_0 and the last column is sum_k c_k e_k - (sum_k c_k alpha_(k) /
/// alpha_(1)) e_0. Rows are returned in the caller's original order.
Matrix build_null_basis(const EdgeWeightVector& alpha);

/// Solves the unit-row-norm equations for the diagonal of beta. Requires
/// n >= 3 and a non-dominant or boundary vector.
BetaDiagonal build_beta(const EdgeWeightVector& alpha);

/// T = V * sqrt(beta): unit row norms, columns in null(alpha alpha'). For
/// n = 2 (boundary only) the single column (1, -sign(alpha_1 alpha_2))'.
OptimalityCertificate build_certificate_nondominant(const EdgeWeightVector& alpha);

/// +-1 vector Phi with Phi = 1 on the largest-magnitude entry and
/// Phi_i = -1 exactly when alpha_i has the same sign as that entry.
/// Computed for any alpha; it only annihilates the rank n-1 solution when
/// alpha is dominant.
Vector sign_witness(const EdgeWeightVector& alpha);

/// Single-column certificate Phi for the rank n-1 solution.
OptimalityCertificate build_certificate_dominant(const EdgeWeightVector& alpha);

/// Branch-appropriate certificate for solve(alpha).
OptimalityCertificate build_certificate(const EdgeWeightVector& alpha);

struct VerificationResiduals {
  double min_d = 0.0;
  double lambda_min = 0.0;
  double null_space = 0.0;      // max_i ||(Sigma_x - D) t_i||
  double eq13 = 0.0;            // max_j | ||t_j||^2 - mu_j - 1 |
  double reconstruction = 0.0;  // max |sigma_t + diag(d) - Sigma_x|
  double min_multiplier = 0.0;  // 0 when there are no multipliers
};

struct VerificationReport {
  bool d_nonneg = false;
  bool lambda_min_zero = false;
  bool null_space = false;
  bool eq13 = false;
  bool reconstruction = false;
  bool pass = false;
  std::vector<std::size_t> zero_index_set;  // I(D*) = {i : d_i <= tol}
  std::size_t witness_rank = 0;
  VerificationResiduals residuals;
  std::string note;
};

/// Checks the four optimality conditions for D = diag(decomp.d) against
/// Sigma_x: d >= 0, lambda_min(Sigma_x - D) = 0, witness columns in the
/// null space, and the all-ones row identity. Also checks that
/// decomp.sigma_t reconstructs Sigma_x. Throws ShapeMismatch when sizes
/// disagree.
VerificationReport verify_certificate(const StarCovariance& sigma_x,
                                      const FactorDecomposition& decomp,
                                      const OptimalityCertificate& cert,
                                      double tol);

}  // namespace cmtfa
