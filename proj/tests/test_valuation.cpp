#include <doctest.h>

#include "helpers.hpp"

using lc::LayeredPiece;
using lc::Piece;

TEST_CASE("additive valuation evaluates exact integrals") {
  auto uniform = additive({flat(1), flat(1)});
  LayeredPiece p({Piece::single(rat(0), rat(1, 2)), Piece::single(rat(1, 2), rat(1))});
  CHECK(uniform->value(p) == rat(1));

  auto zero = additive({{}, {}});
  CHECK(zero->value(p) == rat(0));

  auto front_heavy = additive({{lc::DensitySegment{rat(0), rat(1, 2), rat(2)}}, {}});
  LayeredPiece q({Piece::single(rat(1, 4), rat(3, 4)), Piece()});
  CHECK(front_heavy->value(q) == rat(1, 2));

  LayeredPiece wrong_layers({Piece::single(rat(0), rat(1))});
  CHECK_THROWS_AS(uniform->value(wrong_layers), lc::precondition_error);
}

TEST_CASE("top layer selection counts non-birthday weak preferences") {
  // All agents indifferent between the layers: tie resolves to layer 0.
  CHECK(lc::top_layer(uniform_instance(3, 2)) == 0);

  // Two of three non-birthday agents value only layer 1.
  lc::Instance inst;
  inst.layers = 2;
  inst.agents = {additive({{}, flat(1)}), additive({{}, flat(1)}), additive({flat(1), {}}),
                 additive({flat(1), flat(1)})};
  CHECK(lc::top_layer(inst) == 1);

  // n = 3: one non-birthday agent per layer strictly; count tie, layer 0 wins.
  lc::Instance tie;
  tie.layers = 2;
  tie.agents = {additive({flat(1), {}}), additive({{}, flat(1)}), additive({flat(1), flat(1)})};
  CHECK(lc::top_layer(tie) == 0);

  CHECK_THROWS_AS(lc::top_layer(uniform_instance(3, 1)), lc::precondition_error);
}

TEST_CASE("lipschitz bound is the max declared constant") {
  lc::Instance inst = uniform_instance(2, 2);
  CHECK(lc::lipschitz_bound(inst) == rat(1));
  inst.agents.push_back(additive({{lc::DensitySegment{rat(0), rat(1, 3), rat(7, 2)}}, flat(1)}));
  CHECK(lc::lipschitz_bound(inst) == rat(7, 2));
  lc::Instance empty;
  empty.layers = 1;
  CHECK_THROWS_AS(lc::lipschitz_bound(empty), lc::precondition_error);
}

TEST_CASE("negative or overlapping densities are rejected") {
  CHECK_THROWS_AS(additive({{lc::DensitySegment{rat(0), rat(1), rat(-1)}}}), lc::precondition_error);
  CHECK_THROWS_AS(additive({{lc::DensitySegment{rat(0), rat(1, 2), rat(1)},
                             lc::DensitySegment{rat(1, 4), rat(1), rat(1)}}}),
                  lc::precondition_error);
}

TEST_CASE("lipschitz, monotonicity, additivity, hungry on random data") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    lc::Instance inst = lc::generate_instance(1, 2, 3, 1000 + trial);
    const auto& v = inst.agents[0];
    lc::Rational k = v->lipschitz();

    for (int probe = 0; probe < 5; ++probe) {
      LayeredPiece a = random_layered_piece(rng, 2);
      LayeredPiece b = random_layered_piece(rng, 2);
      CHECK((v->value(a) - v->value(b)).abs() <= k * lc::sym_diff_distance(a, b));

      // Monotonicity: a united with b contains both.
      LayeredPiece ab({a.layers[0].unite(b.layers[0]), a.layers[1].unite(b.layers[1])});
      CHECK(v->value(a) <= v->value(ab));

      // Additivity on interior-disjoint pieces: split a by a point.
      lc::Rational cut = random_rational01(rng);
      LayeredPiece left({a.layers[0].intersect(Piece::single(rat(0), cut)),
                         a.layers[1].intersect(Piece::single(rat(0), cut))});
      LayeredPiece right({a.layers[0].intersect(Piece::single(cut, rat(1))),
                          a.layers[1].intersect(Piece::single(cut, rat(1)))});
      CHECK(v->value(left) + v->value(right) == v->value(a));

      CHECK(v->value(a) >= rat(0));
    }
    LayeredPiece point({Piece::single(rat(1, 3), rat(1, 3)), Piece()});
    CHECK(v->value(point) == rat(0));
  }
}
