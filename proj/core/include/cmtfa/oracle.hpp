#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cmtfa/model.hpp"

namespace cmtfa {

enum class OracleMethod { GridRefine, ProjectedDescent };

std::string_view to_string(OracleMethod method);

/// PSD tolerance used by both oracles: lambda_min >= -1e-9 is feasible.
inline constexpr double kOracleFeasibilityTol = 1e-9;

/// Best feasible point found by an oracle. Neither oracle looks at the
/// closed-form solution.
struct OracleResult {
  Vector best_d;
  double best_trace = 0.0;  // Tr(Sigma_x - diag(best_d))
  OracleMethod method = OracleMethod::GridRefine;
  std::size_t iterations = 0;      // grid points or Newton steps evaluated
  double final_resolution = 0.0;   // grid only
  bool converged = true;
  std::vector<double> round_traces;  // grid: best trace after each round
};

struct FeasibilityResult {
  bool feasible = false;
  double lambda_min = 0.0;
};

/// d >= -tol entrywise and lambda_min(Sigma_x - diag(d)) >= -tol.
FeasibilityResult feasibility_check(const StarCovariance& sigma, const Vector& d,
                                    double tol);

/// Exhaustive grid search over [0, 1]^n maximising sum(d) under the PSD
/// constraint, followed by `refine_rounds` rounds that shrink the grid
/// tenfold around the incumbent. Requires n <= 5.
OracleResult brute_force_cmtfa(const StarCovariance& sigma, double resolution,
                               std::size_t refine_rounds);

struct DescentOptions {
  double step = 1.0;            // initial fraction of the Newton step
  std::size_t max_iter = 4000;  // Newton steps across all barrier stages
  std::uint64_t seed = 0;       // picks the random interior start
  std::optional<Vector> initial_d;
};

/// Barrier-smoothed supergradient ascent on sum(d). Steps that leave the
/// feasible set are shrunk toward the last feasible iterate; the best
/// feasible iterate (lambda_min >= -1e-9) is returned. Requires n <= 64.
OracleResult projected_descent_cmtfa(const StarCovariance& sigma,
                                     const DescentOptions& options);
OracleResult projected_descent_cmtfa(const StarCovariance& sigma, double step,
                                     std::size_t max_iter, std::uint64_t seed);

}  // namespace cmtfa
