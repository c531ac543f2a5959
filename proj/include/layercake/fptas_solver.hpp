#pragma once

#include <map>
#include <optional>

#include "layercake/assignment.hpp"
#include "layercake/preference_field.hpp"

namespace layercake {

struct SolverOptions {
  bool parallel_coloring = false;
};

// Fixed constant of the oracle-call contract: every solve uses at most
// kOracleBudgetFactor * n * (ceil(log2 N) + 1)^2 valuation-oracle calls.
inline constexpr long long kOracleBudgetFactor = 96;

// Barycentric description of a point (x*, y*) with fbar(x*, y*) = omega.
struct StarPoint {
  Rational x;
  Rational y;
  std::array<GridVertex, 3> vertex;
  std::array<Rational, 3> weight;  // nonnegative, sum 1; trailing zeros allowed
};

struct Solution {
  MultiDivision division;  // on the caller's layer order
  GridVertex anchor;       // grid vertex whose division is output
  long long grid_n = 1;
  StarPoint star;
  WeightMatrix weights;                     // rows are non-birthday agents in index order
  std::map<int, GroupAssignment> assignments;  // one per birthday choice j* (0-based)
  Rational epsilon;
  long long oracle_calls = 0;
};

// ceil((i1 + i2) / 2); the probe index of a grid interval [i1/N, i2/N].
long long med_index(long long i1, long long i2);

// Double binary search for a basic square whose fbar-image captures omega;
// exact preimage and weight extraction; one assignment per birthday choice.
// Two-layer mode: m = 2, n >= 3, omega = (1/3,1/3,1/3), groups of size
// floor(n/3) or ceil(n/3).
Solution solve_two_layer(const Instance& instance, const Rational& epsilon,
                         const SolverOptions& options = {});

// One-layer mode: m = 1, n >= 3, arbitrary group sizes k1+k2+k3 = n; runs the
// same machinery on the cake padded with an empty bottom layer.
Solution solve_one_layer(const Instance& instance, const Rational& epsilon,
                         const std::array<long long, 3>& groups,
                         const SolverOptions& options = {});

// Exact preimage of omega inside a basic square satisfying the capture
// condition; solves the barycentric system on each of the two triangles.
StarPoint preimage_of_omega(const PreferenceField& field, long long square_x, long long square_y);

// Nonnegative barycentric coordinates expressing omega in terms of three
// simplex points, if any exist (degenerate images handled edge by edge).
std::optional<std::array<Rational, 3>> barycentric_preimage(const std::array<SimplexPoint, 3>& z,
                                                            const SimplexPoint& omega);

}  // namespace layercake
