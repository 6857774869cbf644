#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "cmtfa/model.hpp"

namespace cmtfa {

enum class Dominance { Dominant, NonDominant, Boundary };

std::string_view to_string(Dominance d);

/// Result of comparing the largest |alpha_i| against the sum of the others.
struct DominanceVerdict {
  Dominance branch = Dominance::NonDominant;
  /// sum_{k>=2} |alpha_(k)| - |alpha_(1)| in the sorted view.
  double margin = 0.0;
  /// Original 0-based index of the largest-magnitude entry; set for
  /// Dominant and Boundary verdicts only.
  std::optional<std::size_t> dominant_index;
};

/// 1e-12 * n, absorbing round-off in the magnitude sum.
double default_boundary_tolerance(std::size_t n);

/// Dominant iff margin < -epsilon, Boundary iff |margin| <= epsilon,
/// NonDominant otherwise.
DominanceVerdict classify(const EdgeWeightVector& alpha, double epsilon);
DominanceVerdict classify(const EdgeWeightVector& alpha);

}  // namespace cmtfa
