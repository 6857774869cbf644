#include "cmtfa/dominance.hpp"

#include <cmath>

namespace cmtfa {

std::string_view to_string(Dominance d) {
  switch (d) {
    case Dominance::Dominant: return "Dominant";
    case Dominance::NonDominant: return "NonDominant";
    case Dominance::Boundary: return "Boundary";
  }
  return "NonDominant";
}

double default_boundary_tolerance(std::size_t n) {
  return 1e-12 * static_cast<double>(n);
}

DominanceVerdict classify(const EdgeWeightVector& alpha, double epsilon) {
  const SortProfile profile = sort_profile(alpha);
  double tail = 0.0;
  for (std::size_t k = 1; k < profile.magnitudes.size(); ++k) tail += profile.magnitudes[k];

  DominanceVerdict verdict;
  verdict.margin = tail - profile.magnitudes.front();
  if (verdict.margin < -epsilon) {
    verdict.branch = Dominance::Dominant;
  } else if (std::abs(verdict.margin) <= epsilon) {
    verdict.branch = Dominance::Boundary;
  } else {
    verdict.branch = Dominance::NonDominant;
  }
  if (verdict.branch != Dominance::NonDominant) {
    verdict.dominant_index = profile.permutation.front();
  }
  return verdict;
}

DominanceVerdict classify(const EdgeWeightVector& alpha) {
  return classify(alpha, default_boundary_tolerance(alpha.size()));
}

}  // namespace cmtfa
