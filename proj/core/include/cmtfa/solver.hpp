#pragma once

#include "cmtfa/dominance.hpp"
#include "cmtfa/model.hpp"

namespace cmtfa {

/// Rank-1 star solution: sigma_t = alpha alpha', d_i = 1 - alpha_i^2.
///
/// Only optimal for non-dominant (or boundary) vectors; throws
/// BranchMismatch on a strictly dominant one.
FactorDecomposition solve_rank1(const EdgeWeightVector& alpha, double epsilon);
FactorDecomposition solve_rank1(const EdgeWeightVector& alpha);

/// Rank n-1 solution for a dominant vector. Off-diagonal entries stay
/// alpha_i alpha_j; with a = |alpha_(1)| and s = sum_{k>=2} |alpha_(k)| the
/// diagonal becomes a * s for the dominant entry and
/// |alpha_(k)| * (a - s + |alpha_(k)|) for the rest.
///
/// Throws BranchMismatch on a strictly non-dominant vector.
FactorDecomposition solve_rank_n_minus_1(const EdgeWeightVector& alpha,
                                         double epsilon);
FactorDecomposition solve_rank_n_minus_1(const EdgeWeightVector& alpha);

/// Closed-form CMTFA optimum. Non-dominant and boundary vectors get the rank-1
/// solution, dominant vectors the rank n-1 one.
FactorDecomposition solve(const EdgeWeightVector& alpha, double epsilon);
FactorDecomposition solve(const EdgeWeightVector& alpha);

/// Tr(rank-1 fit) - Tr(optimal fit) for a dominant or boundary vector:
/// a * (a - 2 s) + s^2, i.e. (a - s)^2.
double trace_advantage(const EdgeWeightVector& alpha, double epsilon);
double trace_advantage(const EdgeWeightVector& alpha);

}  // namespace cmtfa
