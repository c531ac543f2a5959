#pragma once

#include "layercake/cake.hpp"

namespace layercake {

// Encodes a unit-square point as a feasible contiguous 3-bundle division of a
// two-layered cake. The short knife y cuts only the top layer and takes
// priority over the long knife x:
//   bundle 0: top [0, y]
//   bundle 1: top [max(x,y), 1]  +  bottom [0, x]
//   bundle 2: bottom [x, 1]      +  top [y, x] when y <= x
// At y == x the degenerate middle piece is kept as a zero-length interval so
// symmetric-difference bounds between nearby grid points hold uniformly.
MultiDivision two_knife_divide(const Rational& x, const Rational& y);

}  // namespace layercake
