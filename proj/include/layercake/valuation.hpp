#pragma once

#include <memory>
#include <string>
#include <vector>

#include "layercake/cake.hpp"

namespace layercake {

// Constant density on [from, to] of one layer. Gaps between segments mean
// density zero there.
struct DensitySegment {
  Rational from;
  Rational to;
  Rational value;  // >= 0
};

// Agent preference oracle. Implementations must be deterministic, stateless
// under concurrent calls, monotone and Lipschitz with the declared constant;
// AdditiveValuation guarantees all of that by construction, custom oracles are
// trusted.
class Valuation {
 public:
  virtual ~Valuation() = default;
  virtual Rational value(const LayeredPiece& piece) const = 0;
  virtual Rational lipschitz() const = 0;
  virtual int layer_count() const = 0;
};

using ValuationPtr = std::shared_ptr<const Valuation>;

// Nonnegative per-layer step densities. Value of a piece is the exact integral
// of the density over it; monotone and additive by construction, Lipschitz
// with constant max density value.
class AdditiveValuation : public Valuation {
 public:
  explicit AdditiveValuation(std::vector<std::vector<DensitySegment>> density);

  Rational value(const LayeredPiece& piece) const override;
  Rational lipschitz() const override { return lipschitz_; }
  int layer_count() const override { return int(density_.size()); }

  const std::vector<std::vector<DensitySegment>>& density() const { return density_; }

 private:
  std::vector<std::vector<DensitySegment>> density_;
  Rational lipschitz_;
};

// Presents a two-layer view of a one-layer oracle; the added bottom layer has
// no value.
class PaddedBottomValuation : public Valuation {
 public:
  explicit PaddedBottomValuation(ValuationPtr base) : base_(std::move(base)) {}
  Rational value(const LayeredPiece& piece) const override {
    if (piece.layer_count() != 2) throw precondition_error("padded oracle expects 2 layers");
    return base_->value(LayeredPiece({piece.layers[0]}));
  }
  Rational lipschitz() const override { return base_->lipschitz(); }
  int layer_count() const override { return 2; }

 private:
  ValuationPtr base_;
};

// Two-layer oracle with the layers exchanged.
class SwappedLayersValuation : public Valuation {
 public:
  explicit SwappedLayersValuation(ValuationPtr base) : base_(std::move(base)) {}
  Rational value(const LayeredPiece& piece) const override {
    if (piece.layer_count() != 2) throw precondition_error("swapped oracle expects 2 layers");
    return base_->value(LayeredPiece({piece.layers[1], piece.layers[0]}));
  }
  Rational lipschitz() const override { return base_->lipschitz(); }
  int layer_count() const override { return 2; }

 private:
  ValuationPtr base_;
};

struct Instance {
  int layers = 0;
  std::vector<ValuationPtr> agents;
  int birthday = -1;  // 0-based; defaults to the last agent
  std::vector<std::string> names;

  int agent_count() const { return int(agents.size()); }
  int birthday_agent() const { return birthday >= 0 ? birthday : agent_count() - 1; }

  LayeredPiece full_layer(int layer) const {
    LayeredPiece p = LayeredPiece::empty(layers);
    p.layers[size_t(layer)] = Piece::single(Rational(0), Rational(1));
    return p;
  }
};

// Max declared Lipschitz constant over all agents.
Rational lipschitz_bound(const Instance& instance);

// The layer weakly preferred (as a full layer) by the larger count of
// non-birthday agents; per-agent ties count toward both layers, a count tie
// resolves to layer 0. Requires a two-layer instance.
int top_layer(const Instance& instance);

}  // namespace layercake
