#include "layercake/valuation.hpp"

#include <algorithm>

namespace layercake {

AdditiveValuation::AdditiveValuation(std::vector<std::vector<DensitySegment>> density)
    : density_(std::move(density)) {
  for (auto& layer : density_) {
    std::sort(layer.begin(), layer.end(),
              [](const DensitySegment& a, const DensitySegment& b) { return a.from < b.from; });
    for (size_t i = 0; i < layer.size(); ++i) {
      const auto& seg = layer[i];
      if (seg.value.is_negative()) throw precondition_error("negative density");
      if (seg.from > seg.to) throw precondition_error("density segment with from > to");
      if (seg.from < Rational(0) || seg.to > Rational(1))
        throw precondition_error("density segment outside [0,1]");
      if (i > 0 && seg.from < layer[i - 1].to)
        throw precondition_error("overlapping density segments");
      lipschitz_ = Rational::max(lipschitz_, seg.value);
    }
  }
}

Rational AdditiveValuation::value(const LayeredPiece& piece) const {
  if (piece.layer_count() != layer_count())
    throw precondition_error("valuation: layer count mismatch");
  Rational total;
  for (size_t l = 0; l < density_.size(); ++l) {
    for (const auto& iv : piece.layers[l].intervals()) {
      if (iv.zero_length()) continue;
      for (const auto& seg : density_[l]) {
        Rational lo = Rational::max(iv.lo, seg.from);
        Rational hi = Rational::min(iv.hi, seg.to);
        if (lo < hi) total += seg.value * (hi - lo);
      }
    }
  }
  return total;
}

Rational lipschitz_bound(const Instance& instance) {
  if (instance.agents.empty()) throw precondition_error("lipschitz_bound: no agents");
  Rational k;
  for (const auto& agent : instance.agents) k = Rational::max(k, agent->lipschitz());
  return k;
}

int top_layer(const Instance& instance) {
  if (instance.layers != 2) throw precondition_error("top_layer requires a two-layer instance");
  LayeredPiece full0 = instance.full_layer(0);
  LayeredPiece full1 = instance.full_layer(1);
  int count0 = 0, count1 = 0;
  int birthday = instance.birthday_agent();
  for (int i = 0; i < instance.agent_count(); ++i) {
    if (i == birthday) continue;
    Rational v0 = instance.agents[size_t(i)]->value(full0);
    Rational v1 = instance.agents[size_t(i)]->value(full1);
    if (v0 >= v1) ++count0;
    if (v1 >= v0) ++count1;
  }
  return count0 >= count1 ? 0 : 1;
}

}  // namespace layercake
