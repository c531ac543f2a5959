#include "layercake/two_knife.hpp"

namespace layercake {

MultiDivision two_knife_divide(const Rational& x, const Rational& y) {
  const Rational zero(0), one(1);
  if (x < zero || x > one || y < zero || y > one)
    throw precondition_error("two_knife_divide: knife position outside [0,1]");

  Rational top_cut = Rational::max(x, y);

  LayeredPiece a1({Piece::single(zero, y), Piece()});
  LayeredPiece a2({Piece::single(top_cut, one), Piece::single(zero, x)});

  Piece a3_top = y <= x ? Piece::single(y, x) : Piece();
  LayeredPiece a3({a3_top, Piece::single(x, one)});

  return MultiDivision({a1, a2, a3});
}

}  // namespace layercake
