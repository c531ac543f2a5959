#pragma once

#include <vector>

#include "layercake/rational.hpp"

namespace layercake {

// Thrown when a caller violates a documented precondition.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when an internal invariant fails; indicates a bug or an oracle that
// breaks its contract (e.g. a non-monotone valuation fed to the solver).
struct invariant_violation : std::logic_error {
  using std::logic_error::logic_error;
};

// Closed subinterval of [0,1]. Zero-length intervals are legal and meaningful:
// the solvers' tie-breaking rules refer to zero-length pieces explicitly.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw precondition_error("interval with lo > hi");
  }
  Rational length() const { return hi - lo; }
  bool zero_length() const { return lo == hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of closed intervals, kept normalized: sorted by lo, pairwise
// interior-disjoint, touching intervals merged. Standalone zero-length
// intervals are retained; ones touching a longer interval are absorbed.
class Piece {
 public:
  Piece() = default;
  explicit Piece(std::vector<Interval> intervals);
  static Piece single(Rational lo, Rational hi) { return Piece({Interval(std::move(lo), std::move(hi))}); }

  const std::vector<Interval>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  Rational measure() const;

  Piece intersect(const Piece& other) const;
  Piece unite(const Piece& other) const;
  // Intervals of positive length only (zero-length pieces are at pseudo-metric
  // distance zero from nothing at all).
  std::vector<Interval> support() const;

  bool contains(const Piece& other) const;  // per-point set containment
  friend bool operator==(const Piece&, const Piece&) = default;

 private:
  std::vector<Interval> iv_;
};

Rational measure(const Piece& p);

// One piece per layer of an m-layered cake.
struct LayeredPiece {
  std::vector<Piece> layers;

  LayeredPiece() = default;
  explicit LayeredPiece(std::vector<Piece> l) : layers(std::move(l)) {}
  static LayeredPiece empty(int m) { return LayeredPiece(std::vector<Piece>(size_t(m))); }

  int layer_count() const { return int(layers.size()); }
  Rational measure() const;
  friend bool operator==(const LayeredPiece&, const LayeredPiece&) = default;
};

// Pseudo-metric d(L, L') = sum over layers of mu(L_l symmetric-difference L'_l).
Rational sym_diff_distance(const LayeredPiece& a, const LayeredPiece& b);

// q bundles forming (when complete) a partition of the layered cake.
struct MultiDivision {
  std::vector<LayeredPiece> bundles;

  MultiDivision() = default;
  explicit MultiDivision(std::vector<LayeredPiece> b) : bundles(std::move(b)) {}
  int bundle_count() const { return int(bundles.size()); }
};

struct PartitionFlags {
  bool complete = false;    // each layer covered by interior-disjoint pieces
  bool feasible = false;    // within each bundle, layers do not overlap
  bool contiguous = false;  // every per-layer piece is a single interval
  bool all() const { return complete && feasible && contiguous; }
};

PartitionFlags check_partition(const MultiDivision& d, int layer_count);

// pi: agent -> bundle, with the birthday agent pinned to its chosen bundle.
struct GroupAssignment {
  int birthday_choice = -1;     // -1 when no birthday agent participates
  std::vector<int> bundle_of;   // one entry per agent, 0-based bundle indices

  std::vector<int> sizes(int q) const {
    std::vector<int> s(size_t(q), 0);
    for (int b : bundle_of) s.at(size_t(b))++;
    return s;
  }
};

}  // namespace layercake
