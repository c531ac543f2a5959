#include "layercake/cake.hpp"

#include <algorithm>

namespace layercake {

Piece::Piece(std::vector<Interval> intervals) : iv_(std::move(intervals)) {
  std::sort(iv_.begin(), iv_.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  std::vector<Interval> merged;
  for (auto& iv : iv_) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
    } else {
      merged.push_back(iv);
    }
  }
  iv_ = std::move(merged);
}

Rational Piece::measure() const {
  Rational total;
  for (const auto& iv : iv_) total += iv.length();
  return total;
}

Rational measure(const Piece& p) { return p.measure(); }

Piece Piece::intersect(const Piece& other) const {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < iv_.size() && j < other.iv_.size()) {
    const Interval& a = iv_[i];
    const Interval& b = other.iv_[j];
    Rational lo = Rational::max(a.lo, b.lo);
    Rational hi = Rational::min(a.hi, b.hi);
    if (lo <= hi) out.emplace_back(lo, hi);
    if (a.hi < b.hi) ++i;
    else ++j;
  }
  return Piece(std::move(out));
}

Piece Piece::unite(const Piece& other) const {
  std::vector<Interval> out = iv_;
  out.insert(out.end(), other.iv_.begin(), other.iv_.end());
  return Piece(std::move(out));
}

std::vector<Interval> Piece::support() const {
  std::vector<Interval> out;
  for (const auto& iv : iv_)
    if (!iv.zero_length()) out.push_back(iv);
  return out;
}

bool Piece::contains(const Piece& other) const {
  for (const auto& b : other.iv_) {
    bool covered = false;
    for (const auto& a : iv_) {
      if (a.lo <= b.lo && b.hi <= a.hi) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

Rational LayeredPiece::measure() const {
  Rational total;
  for (const auto& p : layers) total += p.measure();
  return total;
}

Rational sym_diff_distance(const LayeredPiece& a, const LayeredPiece& b) {
  if (a.layer_count() != b.layer_count())
    throw precondition_error("sym_diff_distance: layer count mismatch");
  Rational total;
  for (size_t l = 0; l < a.layers.size(); ++l) {
    const Piece& pa = a.layers[l];
    const Piece& pb = b.layers[l];
    // mu(A ^ B) = mu(A) + mu(B) - 2 mu(A n B) for normalized unions.
    total += pa.measure() + pb.measure() - Rational(2) * pa.intersect(pb).measure();
  }
  return total;
}

PartitionFlags check_partition(const MultiDivision& d, int layer_count) {
  PartitionFlags flags;
  flags.complete = true;
  flags.feasible = true;
  flags.contiguous = true;
  const Rational one(1);

  for (int l = 0; l < layer_count; ++l) {
    std::vector<Interval> all;
    for (const auto& bundle : d.bundles) {
      if (bundle.layer_count() != layer_count) {
        flags.complete = false;
        continue;
      }
      const Piece& p = bundle.layers[size_t(l)];
      if (p.intervals().size() > 1) flags.contiguous = false;
      for (const auto& iv : p.intervals()) all.push_back(iv);
    }
    std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.hi < b.hi;
    });
    // Interiors pairwise disjoint and union of full measure 1 inside [0,1]:
    // any gap between finite closed intervals has positive length, so measure
    // 1 is equivalent to covering [0,1] up to shared endpoints.
    Rational covered;
    Rational frontier;  // max hi seen so far
    bool first = true;
    for (const auto& iv : all) {
      if (iv.lo < Rational(0) || iv.hi > one) flags.complete = false;
      if (!first && iv.lo < frontier) {
        if (Rational::min(iv.hi, frontier) > iv.lo)
          flags.complete = false;  // positive-length overlap between bundles
        if (iv.hi > frontier) {
          covered += iv.hi - frontier;
          frontier = iv.hi;
        }
      } else {
        covered += iv.length();
        frontier = first ? iv.hi : Rational::max(frontier, iv.hi);
      }
      first = false;
    }
    if (covered != one) flags.complete = false;
  }

  for (const auto& bundle : d.bundles) {
    for (size_t l = 0; l + 1 < bundle.layers.size(); ++l) {
      for (size_t l2 = l + 1; l2 < bundle.layers.size(); ++l2) {
        if (!bundle.layers[l].intersect(bundle.layers[l2]).measure().is_zero())
          flags.feasible = false;
      }
    }
  }
  return flags;
}

}  // namespace layercake
