#include <doctest.h>

#include "layercake/two_knife.hpp"

#include "helpers.hpp"

using lc::Interval;
using lc::LayeredPiece;
using lc::MultiDivision;
using lc::Piece;

TEST_CASE("measure of pieces") {
  CHECK(Piece::single(rat(0), rat(1)).measure() == rat(1));
  CHECK(Piece().measure() == rat(0));
  CHECK(Piece({Interval(rat(0), rat(1, 4)), Interval(rat(1, 2), rat(3, 4))}).measure() == rat(1, 2));
}

TEST_CASE("normalization merges touching intervals and keeps isolated points") {
  Piece merged({Interval(rat(0), rat(1, 2)), Interval(rat(1, 2), rat(1))});
  CHECK(merged.intervals().size() == 1);
  CHECK(merged == Piece::single(rat(0), rat(1)));

  Piece with_point({Interval(rat(0), rat(0)), Interval(rat(1, 2), rat(1))});
  CHECK(with_point.intervals().size() == 2);
  CHECK(with_point.intervals()[0].zero_length());

  Piece absorbed({Interval(rat(1, 4), rat(1, 4)), Interval(rat(0), rat(1, 2))});
  CHECK(absorbed.intervals().size() == 1);
}

TEST_CASE("symmetric-difference pseudo-metric") {
  LayeredPiece a({Piece::single(rat(0), rat(1, 2)), Piece()});
  LayeredPiece b({Piece::single(rat(0), rat(1, 4)), Piece::single(rat(0), rat(1, 4))});
  CHECK(lc::sym_diff_distance(a, a) == rat(0));
  CHECK(lc::sym_diff_distance(a, b) == rat(1, 2));

  // Zero-length pieces are at distance zero from each other.
  LayeredPiece p0({Piece::single(rat(0), rat(0))});
  LayeredPiece p1({Piece::single(rat(1), rat(1))});
  CHECK(lc::sym_diff_distance(p0, p1) == rat(0));

  LayeredPiece short_one({Piece::single(rat(0), rat(1))});
  CHECK_THROWS_AS(lc::sym_diff_distance(a, short_one), lc::precondition_error);
}

TEST_CASE("check_partition flags") {
  // One long knife and one short knife.
  MultiDivision fig = lc::two_knife_divide(rat(3, 10), rat(4, 10));
  lc::PartitionFlags flags = lc::check_partition(fig, 2);
  CHECK(flags.complete);
  CHECK(flags.feasible);
  CHECK(flags.contiguous);

  // A bundle holding the same interval in both layers is not feasible.
  MultiDivision overlapping({LayeredPiece({Piece::single(rat(0), rat(1, 2)),
                                           Piece::single(rat(0), rat(1, 2))}),
                             LayeredPiece({Piece::single(rat(1, 2), rat(1)),
                                           Piece::single(rat(1, 2), rat(1))})});
  CHECK_FALSE(lc::check_partition(overlapping, 2).feasible);

  // Covering only half a layer is not complete.
  MultiDivision partial({LayeredPiece({Piece::single(rat(0), rat(1, 4))}),
                         LayeredPiece({Piece::single(rat(1, 4), rat(1, 2))})});
  CHECK_FALSE(lc::check_partition(partial, 1).complete);

  // Interior overlap between bundles is not complete either.
  MultiDivision doubled({LayeredPiece({Piece::single(rat(0), rat(3, 4))}),
                         LayeredPiece({Piece::single(rat(1, 2), rat(1))})});
  CHECK_FALSE(lc::check_partition(doubled, 1).complete);

  // A zero-length piece inside another bundle's interval is harmless.
  MultiDivision pointy({LayeredPiece({Piece::single(rat(0), rat(1))}),
                        LayeredPiece({Piece::single(rat(1, 2), rat(1, 2))})});
  CHECK(lc::check_partition(pointy, 1).complete);
}

TEST_CASE("inclusion-exclusion for measures on random pieces") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Piece a = random_piece(rng);
    Piece b = random_piece(rng);
    CHECK(a.unite(b).measure() + a.intersect(b).measure() == a.measure() + b.measure());
  }
}

TEST_CASE("pseudo-metric triangle inequality on random layered pieces") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    LayeredPiece a = random_layered_piece(rng, 2);
    LayeredPiece b = random_layered_piece(rng, 2);
    LayeredPiece c = random_layered_piece(rng, 2);
    CHECK(lc::sym_diff_distance(a, a) == rat(0));
    CHECK(lc::sym_diff_distance(a, c) <=
          lc::sym_diff_distance(a, b) + lc::sym_diff_distance(b, c));
  }
}
