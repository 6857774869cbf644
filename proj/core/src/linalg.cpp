#include "cmtfa/linalg.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cmtfa::linalg {

Vector symmetric_spectrum(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double lambda_min(const Matrix& symmetric) {
  return symmetric_spectrum(symmetric)(0);
}

std::size_t numerical_rank(const Matrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  const double cutoff =
      kRankCutoff * static_cast<double>(std::max(m.rows(), m.cols())) * s(0);
  return static_cast<std::size_t>((s.array() > cutoff).count());
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace cmtfa::linalg
