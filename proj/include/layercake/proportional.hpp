#pragma once

#include "layercake/fptas_solver.hpp"

namespace layercake {

// Split of the current layers into qprime merged layers of consecutive
// constituents; counts differ by at most one and sum to the layer count.
struct MergePlan {
  int qprime = 0;
  std::vector<int> counts;
};

MergePlan make_merge_plan(int layers, int qprime);

// Instance on the merged geometry: merged-layer densities are the sums of
// their constituents' densities (values agree because constituents share the
// coordinate axis). Requires additive valuations.
Instance merge_instance(const Instance& instance, const MergePlan& plan);

struct TwoGroupSolution {
  MultiDivision division;  // 2 bundles on the given (<= 2 layer) instance
  Rational star_x;
  GroupAssignment assignment;  // all agents, sizes within one
  WeightMatrix weights;
};

// One long knife at x: bundle 0 is top[0,x] + bottom[x,1], bundle 1 the
// complement. All agents participate (no birthday agent); grid ceil(4K/eps);
// binary search on the sign of fbar_1 - 1/2, which straddles because
// fbar_1(0) + fbar_1(1) = 1 under the tie-break "tie -> bundle 0 iff
// x <= 1/2". The output knife is the grid vertex nearest the crossing.
TwoGroupSolution solve_two_group_long_knife(const Instance& instance, const Rational& epsilon,
                                            const SolverOptions& options = {});

struct ProportionalSolution {
  MultiDivision division;  // q bundles on the original cake
  GroupAssignment assignment;
  Rational epsilon;
  long long q = 1;
};

// Recursive merge / solve / concatenate for q with prime factors in {2, 3}:
// factors are consumed largest first, a 3-factor runs the two-layer (or
// one-layer) FPTAS on the merged cake, a 2-factor runs the long-knife split;
// each group's allocation is concatenated into a child cake and rescaled.
// Guarantee: every agent ends with value at least alpha_i/q - epsilon.
ProportionalSolution solve_proportional(const Instance& instance, long long q,
                                        const Rational& epsilon, const SolverOptions& options = {});

}  // namespace layercake
