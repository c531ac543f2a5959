#pragma once

#include <map>
#include <optional>

#include "layercake/assignment.hpp"
#include "layercake/valuation.hpp"

namespace layercake {

// The additive group (Z_p)^k of order q = p^k. Elements are identified with
// their mixed-radix base-p codes 0..q-1; the bijection eta and the injection h
// are both this identification (h restricted to the layer indices).
class Group {
 public:
  static Group of_order(long long q);  // throws unless q is a prime power

  long long order() const { return q_; }
  long long prime() const { return p_; }
  int exponent() const { return k_; }

  long long add(long long a, long long b) const;
  long long neg(long long a) const;

 private:
  Group(long long p, int k, long long q) : p_(p), k_(k), q_(q) {}
  long long p_;
  int k_;
  long long q_;
};

// Maximal simplex of the chessboard complex: one rook per column, pairwise
// distinct rows on the (2q-1) x q board.
struct RookPlacement {
  std::vector<int> row;  // row[j] in [0, 2q-1), all distinct
  friend bool operator==(const RookPlacement&, const RookPlacement&) = default;
};

// Point of the complex carried with an explicit maximal simplex; carrying the
// simplex in the representation realizes the equivariant simplex choice.
struct ChessboardPoint {
  RookPlacement placement;
  std::vector<Rational> coord;  // coord[j] >= 0 for column j, summing to 1
};

// Column relabeling j -> g + j, coordinates carried with their rows.
ChessboardPoint act(const Group& group, long long g, const ChessboardPoint& x);

// Long-knife division encoded by x: sort the placement rows, cut every layer
// at the same positions, and bundle the j-th piece of layer l under the name
// row-rank(j) + l. Feasible and contiguous by construction.
MultiDivision chessboard_decode(const ChessboardPoint& x, int layers, const Group& group);

// Enumerates every maximal placement in lexicographic row order.
std::vector<RookPlacement> all_placements(long long q);

struct ChessboardSearchOptions {
  bool parallel = false;
  // Scan every point even after a perfectly balanced one is found; the
  // result is unchanged, only the work differs (used by the benchmark).
  bool exhaustive = false;
  // Indifference slack for the preferred sets; defaults to 6K/R.
  std::optional<Rational> theta;
};

struct ChessboardSearchResult {
  ChessboardPoint best;
  MultiDivision division;
  Rational balance;                  // max_j |popularity_j - 1/q|
  std::vector<Rational> popularity;  // balanced column sums / (n-1)
  Rational theta;
  std::map<int, GroupAssignment> assignments;  // per j*, present iff balance == 0
  long long points_scanned = 0;
  long long placements_scanned = 0;
};

// Scans every placement and every barycentric grid point with denominator R
// for the point whose theta-indifference sets support the most balanced
// fractional assignment (an exact max-flow per support pattern). Heuristic
// search: the best point and its balance are always reported; assignments are
// produced only when the balance is exactly zero. Deterministic also in
// parallel mode: ties resolve to the earliest (placement, point) pair.
ChessboardSearchResult grid_search_envy_free(const Instance& instance, long long q, long long r,
                                             const ChessboardSearchOptions& options = {});

struct EqualSizeDemoResult {
  MultiDivision division;  // one layer; each bundle is q subintervals
  // Per bundle, the q construction subinterval lengths in ascending order;
  // identical across bundles. Read off the stacked division (the normalized
  // union may merge subintervals that touch at block boundaries).
  std::vector<std::vector<Rational>> subinterval_lengths;
  std::map<int, GroupAssignment> assignments;
  ChessboardSearchResult search;  // on the stacked q-layer instance
};

// Cuts the one-layer cake into q equal blocks, stacks them into q layers,
// searches for a balanced division, and maps the result back: every bundle
// ends up with the same multiset of subinterval lengths.
EqualSizeDemoResult equal_size_demo(const Instance& one_layer, long long q, long long r,
                                    const ChessboardSearchOptions& options = {});

}  // namespace layercake
