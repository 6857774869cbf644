#include "cmtfa/certificate.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cmtfa/dominance.hpp"
#include "cmtfa/errors.hpp"
#include "cmtfa/linalg.hpp"

namespace cmtfa {
namespace {

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Rows of `sorted` are in sorted-slot order; move them back to user order.
Matrix unpermute_rows(const Matrix& sorted, const SortProfile& profile) {
  Matrix out(sorted.rows(), sorted.cols());
  for (std::size_t k = 0; k < profile.permutation.size(); ++k) {
    out.row(static_cast<Eigen::Index>(profile.permutation[k])) =
        sorted.row(static_cast<Eigen::Index>(k));
  }
  return out;
}

double squared_tail(const std::vector<double>& magnitudes) {
  double sum = 0.0;
  for (std::size_t k = 1; k < magnitudes.size(); ++k) sum += magnitudes[k] * magnitudes[k];
  return sum;
}

}  // namespace

Vector null_basis_signs(const EdgeWeightVector& alpha) {
  const SortProfile profile = sort_profile(alpha);
  const auto s = profile.sorted_entries(alpha);
  const auto n = static_cast<Eigen::Index>(s.size());
  const double top = profile.magnitudes.front();

  Vector c(n - 1);
  if (top * top >= squared_tail(profile.magnitudes)) {
    for (Eigen::Index k = 1; k < n; ++k) c(k - 1) = sign_of(s[static_cast<std::size_t>(k)]);
    return c;
  }
  // With c_k alpha_(k) = |alpha_(k)| the beta_nn numerator would be negative.
  // Balance the signed sum instead: each term opposes the running total, so
  // |sum_k c_k alpha_(k)| stays within |alpha_(2)| <= |alpha_(1)|.
  double running = 0.0;
  for (Eigen::Index k = 1; k < n; ++k) {
    const double a = s[static_cast<std::size_t>(k)];
    double ck = sign_of(a);
    if (running * ck * a > 0.0) ck = -ck;
    c(k - 1) = ck;
    running += ck * a;
  }
  return c;
}

Matrix build_null_basis(const EdgeWeightVector& alpha) {
  const SortProfile profile = sort_profile(alpha);
  const auto s = profile.sorted_entries(alpha);
  const auto n = static_cast<Eigen::Index>(s.size());
  const Vector c = null_basis_signs(alpha);
  const double head = s.front();

  Matrix v = Matrix::Zero(n, n);
  double combined = 0.0;
  for (Eigen::Index k = 1; k < n; ++k) {
    const double a = s[static_cast<std::size_t>(k)];
    v(0, k - 1) = -a / head;
    v(k, k - 1) = 1.0;
    v(k, n - 1) = c(k - 1);
    combined += c(k - 1) * a;
  }
  v(0, n - 1) = -combined / head;
  return unpermute_rows(v, profile);
}

BetaDiagonal build_beta(const EdgeWeightVector& alpha) {
  const auto n = alpha.size();
  if (n < 3) {
    throw DimensionError("beta is only defined for n >= 3; the cross-term sum is empty at n = 2");
  }
  const auto verdict = classify(alpha);
  if (verdict.branch == Dominance::Dominant) {
    throw BranchMismatch(fmt::format(
        "beta_nn exceeds 1 for a dominant alpha (margin {})", verdict.margin));
  }

  const SortProfile profile = sort_profile(alpha);
  const auto s = profile.sorted_entries(alpha);
  const double top = profile.magnitudes.front();

  BetaDiagonal out;
  out.signs = null_basis_signs(alpha);
  out.entry_signs = top * top >= squared_tail(profile.magnitudes);

  // beta_nn = (alpha_1^2 - sum_{k>=2} alpha_k^2) / sum_{i != j; i, j >= 2} c_i c_j alpha_i alpha_j
  double numerator = top * top - squared_tail(profile.magnitudes);
  double cross = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      cross += out.signs(static_cast<Eigen::Index>(i - 1)) * s[i] *
               out.signs(static_cast<Eigen::Index>(j - 1)) * s[j];
    }
  }
  const double denominator = 2.0 * cross;
  double beta_nn = numerator == 0.0 ? 0.0 : numerator / denominator;
  // Only round-off can push beta_nn outside [0, 1] here (boundary inputs).
  beta_nn = std::clamp(beta_nn, 0.0, 1.0);

  out.beta = Vector::Constant(static_cast<Eigen::Index>(n), 1.0 - beta_nn);
  out.beta(static_cast<Eigen::Index>(n) - 1) = beta_nn;
  return out;
}

Vector sign_witness(const EdgeWeightVector& alpha) {
  const SortProfile profile = sort_profile(alpha);
  const auto head = profile.permutation.front();
  Vector phi(static_cast<Eigen::Index>(alpha.size()));
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    phi(static_cast<Eigen::Index>(i)) =
        (i != head && alpha[head] * alpha[i] > 0.0) ? -1.0 : 1.0;
  }
  return phi;
}

OptimalityCertificate build_certificate_nondominant(const EdgeWeightVector& alpha) {
  const auto verdict = classify(alpha);
  if (verdict.branch == Dominance::Dominant) {
    throw BranchMismatch(fmt::format(
        "no unit-row null-space witness exists for a dominant alpha (margin {})",
        verdict.margin));
  }
  OptimalityCertificate cert;
  if (alpha.size() == 2) {
    // |alpha_1| = |alpha_2|: (1, -sign(alpha_1 alpha_2))' is the whole null space.
    cert.witness = sign_witness(alpha);
    return cert;
  }
  const BetaDiagonal beta = build_beta(alpha);
  cert.witness = build_null_basis(alpha) * beta.beta.cwiseSqrt().asDiagonal();
  return cert;
}

OptimalityCertificate build_certificate_dominant(const EdgeWeightVector& alpha) {
  const auto verdict = classify(alpha);
  if (verdict.branch == Dominance::NonDominant) {
    throw BranchMismatch(fmt::format(
        "the sign witness needs a dominant alpha (margin {})", verdict.margin));
  }
  OptimalityCertificate cert;
  cert.witness = sign_witness(alpha);
  return cert;
}

OptimalityCertificate build_certificate(const EdgeWeightVector& alpha) {
  if (classify(alpha).branch == Dominance::Dominant) {
    return build_certificate_dominant(alpha);
  }
  return build_certificate_nondominant(alpha);
}

VerificationReport verify_certificate(const StarCovariance& sigma_x,
                                      const FactorDecomposition& decomp,
                                      const OptimalityCertificate& cert,
                                      double tol) {
  const Eigen::Index n = sigma_x.size();
  if (decomp.sigma_t.rows() != n || decomp.sigma_t.cols() != n || decomp.d.size() != n ||
      cert.witness.rows() != n) {
    throw ShapeMismatch(fmt::format(
        "shape mismatch: Sigma_x {0}x{0}, sigma_t {1}x{2}, d {3}, witness {4}x{5}", n,
        decomp.sigma_t.rows(), decomp.sigma_t.cols(), decomp.d.size(),
        cert.witness.rows(), cert.witness.cols()));
  }

  VerificationReport report;
  auto& res = report.residuals;
  const Matrix reduced = sigma_x.matrix() - Matrix(decomp.d.asDiagonal());

  res.min_d = decomp.d.minCoeff();
  report.d_nonneg = res.min_d >= -tol;

  res.lambda_min = linalg::lambda_min(reduced);
  report.lambda_min_zero = std::abs(res.lambda_min) <= tol;

  res.null_space = cert.witness.cols() == 0
                       ? 0.0
                       : (reduced * cert.witness).colwise().norm().maxCoeff();
  report.null_space = res.null_space <= tol;

  for (Eigen::Index i = 0; i < n; ++i) {
    if (decomp.d(i) <= tol) report.zero_index_set.push_back(static_cast<std::size_t>(i));
  }
  bool multipliers_ok = true;
  res.min_multiplier = 0.0;
  Vector mu = Vector::Zero(n);
  for (const auto& [j, value] : cert.multipliers) {
    const bool in_set = std::find(report.zero_index_set.begin(), report.zero_index_set.end(),
                                  j) != report.zero_index_set.end();
    if (!in_set || !(value >= 0.0)) multipliers_ok = false;
    res.min_multiplier = std::min(res.min_multiplier, value);
    if (j < static_cast<std::size_t>(n)) mu(static_cast<Eigen::Index>(j)) = value;
  }
  const Vector row_norms = cert.witness.rowwise().squaredNorm();
  res.eq13 = (row_norms - mu - Vector::Ones(n)).cwiseAbs().maxCoeff();
  report.eq13 = multipliers_ok && res.eq13 <= tol;

  res.reconstruction = linalg::max_abs_diff(
      decomp.sigma_t + Matrix(decomp.d.asDiagonal()), sigma_x.matrix());
  report.reconstruction = res.reconstruction <= tol;

  report.witness_rank = linalg::numerical_rank(cert.witness);
  report.pass = report.d_nonneg && report.lambda_min_zero && report.null_space &&
                report.eq13 && report.reconstruction;
  if (decomp.branch == Branch::Boundary) {
    report.note = fmt::format("boundary: witness rank {}", report.witness_rank);
  }
  return report;
}

}  // namespace cmtfa
