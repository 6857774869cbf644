#pragma once

#include <cstddef>

#include "cmtfa/model.hpp"

namespace cmtfa::linalg {

/// Eigenvalues of a symmetric matrix in ascending order.
Vector symmetric_spectrum(const Matrix& symmetric);

/// Smallest eigenvalue of a symmetric matrix.
double lambda_min(const Matrix& symmetric);

/// Default relative singular-value cutoff factor: sigma < 1e-8 * n * sigma_max
/// counts as zero.
inline constexpr double kRankCutoff = 1e-8;

/// Number of singular values above kRankCutoff * max(rows, cols) * sigma_max.
std::size_t numerical_rank(const Matrix& m);

/// Largest absolute entry of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace cmtfa::linalg
