#pragma once

#include "rectlab/grid.hpp"
#include "rectlab/rectangle.hpp"

namespace rectlab {

/// Cell y holds the average of |f| over the translate of R whose lower corner
/// is the left endpoint of y, wrapping around the torus.
GridFunction box_average_field(const GridFunction& f, const DyadicRectangle& rect);

/// Discrete maximal function over cell-aligned translates of the family:
/// the value on cell c is the largest anchored average over every window that
/// covers c. Computed per rectangle with separable prefix sums followed by a
/// monotone-queue dilation on each axis.
GridFunction maximal_function(const GridFunction& f, const RectangleFamily& family);

/// Same contract as maximal_function, by exhaustive enumeration of every
/// (rectangle, anchor, covered cell) triple. Reference implementation only.
GridFunction maximal_function_bruteforce(const GridFunction& f, const RectangleFamily& family);

}  // namespace rectlab
