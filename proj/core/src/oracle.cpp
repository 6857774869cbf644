#include "cmtfa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "cmtfa/errors.hpp"
#include "cmtfa/linalg.hpp"
#include "cmtfa/rng.hpp"

namespace cmtfa {

std::string_view to_string(OracleMethod method) {
  switch (method) {
    case OracleMethod::GridRefine: return "GridRefine";
    case OracleMethod::ProjectedDescent: return "ProjectedDescent";
  }
  return "GridRefine";
}

FeasibilityResult feasibility_check(const StarCovariance& sigma, const Vector& d,
                                    double tol) {
  if (d.size() != sigma.size()) {
    throw ShapeMismatch(fmt::format("d has {} entries, Sigma_x is {}x{}", d.size(),
                                    sigma.size(), sigma.size()));
  }
  FeasibilityResult out;
  out.lambda_min = linalg::lambda_min(sigma.matrix() - Matrix(d.asDiagonal()));
  out.feasible = (d.array() >= -tol).all() && out.lambda_min >= -tol;
  return out;
}

namespace {

// Grid enumeration with a reusable eigensolver. Feasibility is monotone:
// lowering any d_i keeps Sigma_x - D PSD, which both prunes the outer axes
// and lets the last axis be searched by bisection.
class GridSearch {
  static constexpr double kLastAxisRelTol = 1e-6;

 public:
  explicit GridSearch(const Matrix& sigma)
      : sigma_(sigma), work_(sigma), solver_(sigma.rows()) {}

  bool feasible(const Vector& d) {
    ++evaluations_;
    work_ = sigma_;
    work_.diagonal() -= d;
    solver_.compute(work_, Eigen::EigenvaluesOnly);
    return solver_.eigenvalues()(0) >= -kOracleFeasibilityTol;
  }

  // Returns true if a feasible grid point beat `best_sum`.
  bool run(const std::vector<std::vector<double>>& axes, Vector& best, double& best_sum) {
    axes_ = &axes;
    point_ = Vector(static_cast<Eigen::Index>(axes.size()));
    for (std::size_t k = 0; k < axes.size(); ++k) {
      point_(static_cast<Eigen::Index>(k)) = axes[k].front();
    }
    improved_ = false;
    best_ = &best;
    best_sum_ = &best_sum;
    if (feasible(point_)) descend(0);
    return improved_;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  void descend(std::size_t k) {
    const auto& axes = *axes_;
    const auto idx = static_cast<Eigen::Index>(k);
    if (k + 1 == axes.size()) {
      // The last coordinate is bisected continuously between the axis ends
      // (the front is known feasible). Rounding it down to a grid index
      // throws away up to one grid step, which near a flat ridge of the
      // boundary is more than any single move gains, and stalls refinement.
      double lo = axes[k].front();
      double hi = axes[k].back();
      point_(idx) = hi;
      if (!feasible(point_)) {
        const double stop = std::max(1e-14, (hi - lo) * kLastAxisRelTol);
        while (hi - lo > stop) {
          const double mid = 0.5 * (lo + hi);
          point_(idx) = mid;
          if (feasible(point_)) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        point_(idx) = lo;
      }
      const double sum = point_.sum();
      if (sum > *best_sum_) {
        *best_sum_ = sum;
        *best_ = point_;
        improved_ = true;
      }
      point_(idx) = axes[k].front();
      return;
    }
    for (std::size_t j = 0; j < axes[k].size(); ++j) {
      point_(idx) = axes[k][j];
      // Later coordinates sit at their lowest value here.
      if (j > 0 && !feasible(point_)) break;
      descend(k + 1);
    }
    point_(idx) = axes[k].front();
  }

  const Matrix& sigma_;
  Matrix work_;
  Eigen::SelfAdjointEigenSolver<Matrix> solver_;
  const std::vector<std::vector<double>>* axes_ = nullptr;
  Vector point_;
  Vector* best_ = nullptr;
  double* best_sum_ = nullptr;
  bool improved_ = false;
  std::size_t evaluations_ = 0;
};

std::vector<double> coarse_axis(double resolution) {
  std::vector<double> axis;
  for (std::size_t k = 0;; ++k) {
    const double v = static_cast<double>(k) * resolution;
    if (v > 1.0 + 1e-12) break;
    axis.push_back(std::min(v, 1.0));
  }
  if (axis.back() < 1.0 - 1e-12) axis.push_back(1.0);
  return axis;
}

std::vector<double> local_axis(double center, double resolution, int half_points) {
  std::vector<double> axis;
  for (int j = -half_points; j <= half_points; ++j) {
    const double v = j == 0 ? center : center + j * resolution;
    if (v < -1e-15 || v > 1.0 + 1e-15) continue;
    axis.push_back(std::clamp(v, 0.0, 1.0));
  }
  return axis;
}

}  // namespace

OracleResult brute_force_cmtfa(const StarCovariance& sigma, double resolution,
                               std::size_t refine_rounds) {
  const Eigen::Index n = sigma.size();
  if (n > 5) {
    throw DimensionError(fmt::format(
        "grid oracle supports n <= 5 (cost grows as grid^n), got n = {}", n));
  }
  if (n < 1) throw DimensionError("empty covariance");
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw DomainError(fmt::format("grid resolution must lie in (0, 1], got {}", resolution));
  }

  GridSearch grid(sigma.matrix());
  Vector best;
  double best_sum = -std::numeric_limits<double>::infinity();
  const std::vector<std::vector<double>> coarse(static_cast<std::size_t>(n),
                                                coarse_axis(resolution));
  grid.run(coarse, best, best_sum);
  if (best.size() == 0) {
    throw DomainError("no feasible grid point found; Sigma_x is not positive semidefinite");
  }

  OracleResult out;
  out.method = OracleMethod::GridRefine;
  const double trace = sigma.matrix().trace();
  out.round_traces.push_back(trace - best_sum);

  constexpr int kHalfPoints = 10;
  constexpr int kMaxRecentre = 100;
  double h = resolution;
  for (std::size_t round = 0; round < refine_rounds; ++round) {
    h /= kHalfPoints;
    for (int pass = 0; pass < kMaxRecentre; ++pass) {
      std::vector<std::vector<double>> axes;
      for (Eigen::Index i = 0; i < n; ++i) axes.push_back(local_axis(best(i), h, kHalfPoints));
      if (!grid.run(axes, best, best_sum)) break;
    }
    out.round_traces.push_back(trace - best_sum);
  }

  out.best_d = best;
  out.best_trace = trace - best_sum;
  out.iterations = grid.evaluations();
  out.final_resolution = h;
  return out;
}

namespace {

class BarrierProblem {
 public:
  explicit BarrierProblem(const Matrix& sigma) : sigma_(sigma) {}

  // d > 0 and Sigma_x - D positive definite.
  bool strictly_feasible(const Vector& d) {
    if ((d.array() <= 0.0).any()) return false;
    llt_.compute(sigma_ - Matrix(d.asDiagonal()));
    return llt_.info() == Eigen::Success;
  }

  // sum(d) + mu * (log det(Sigma_x - D) + sum log d); call after
  // strictly_feasible(d) returned true.
  double value(const Vector& d, double mu) const {
    const double logdet = 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
    return d.sum() + mu * (logdet + d.array().log().sum());
  }

  Matrix inverse() const {
    return llt_.solve(Matrix::Identity(sigma_.rows(), sigma_.cols()));
  }

 private:
  const Matrix& sigma_;
  Eigen::LLT<Matrix> llt_;
};

}  // namespace

OracleResult projected_descent_cmtfa(const StarCovariance& sigma,
                                     const DescentOptions& options) {
  const Eigen::Index n = sigma.size();
  if (n > 64) {
    throw DimensionError(fmt::format("descent oracle supports n <= 64, got n = {}", n));
  }
  if (n < 1) throw DimensionError("empty covariance");
  if (!(options.step > 0.0)) {
    throw DomainError(fmt::format("step must be positive, got {}", options.step));
  }

  const Matrix& s = sigma.matrix();
  BarrierProblem problem(s);
  OracleResult out;
  out.method = OracleMethod::ProjectedDescent;

  Vector best;
  double best_sum = -std::numeric_limits<double>::infinity();
  auto consider = [&](const Vector& d) {
    if (d.sum() > best_sum && feasibility_check(sigma, d, kOracleFeasibilityTol).feasible) {
      best_sum = d.sum();
      best = d;
    }
  };

  Vector x;
  if (options.initial_d) {
    if (options.initial_d->size() != n) {
      throw ShapeMismatch(fmt::format("initial d has {} entries, expected {}",
                                      options.initial_d->size(), n));
    }
    consider(*options.initial_d);
    // The barrier needs a strictly interior start.
    x = (0.999 * options.initial_d->array()).max(1e-9).matrix();
  } else {
    CounterRng rng(options.seed, 0);
    std::uniform_real_distribution<double> start(0.05, 0.5);
    x.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = start(rng);
  }
  for (int tries = 0; !problem.strictly_feasible(x); ++tries) {
    if (tries > 200) throw DomainError("Sigma_x is not positive definite");
    x *= 0.5;
  }
  consider(x);

  constexpr double kMuStart = 1.0;
  constexpr double kMuFinal = 1e-12;
  constexpr double kMuShrink = 0.2;
  constexpr int kStageIterations = 100;

  double mu = kMuStart;
  std::size_t iterations = 0;
  bool exhausted = false;
  while (mu > kMuFinal && !exhausted) {
    for (int it = 0; it < kStageIterations; ++it) {
      if (iterations >= options.max_iter) {
        exhausted = true;
        break;
      }
      problem.strictly_feasible(x);
      const double current = problem.value(x, mu);
      const Matrix inv = problem.inverse();
      // Supergradient and (negated) Hessian of the barrier-smoothed objective.
      const Vector grad = Vector::Ones(n) - mu * inv.diagonal() + mu * x.cwiseInverse();
      Matrix hess = mu * inv.cwiseProduct(inv);
      hess.diagonal() += mu * x.array().square().inverse().matrix();
      const Vector dir = hess.ldlt().solve(grad);
      const double decrement = grad.dot(dir);
      if (!(decrement > 1e-10 * mu)) break;

      // Halve the step, shrinking toward the last feasible iterate, until the
      // trial point is interior and the ascent is sufficient.
      double t = options.step;
      bool accepted = false;
      Vector trial;
      while (t > 1e-16) {
        trial = x + t * dir;
        if (problem.strictly_feasible(trial) &&
            problem.value(trial, mu) >= current + 0.25 * t * decrement) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      ++iterations;
      if (!accepted) break;
      x = trial;
      consider(x);
    }
    mu *= kMuShrink;
  }

  out.best_d = best;
  out.best_trace = s.trace() - best_sum;
  out.iterations = iterations;
  out.converged = !exhausted;
  return out;
}

OracleResult projected_descent_cmtfa(const StarCovariance& sigma, double step,
                                     std::size_t max_iter, std::uint64_t seed) {
  DescentOptions options;
  options.step = step;
  options.max_iter = max_iter;
  options.seed = seed;
  return projected_descent_cmtfa(sigma, options);
}

}  // namespace cmtfa
