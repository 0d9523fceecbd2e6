#pragma once

#include "rectlab/dyadic.hpp"
#include "rectlab/rectangle.hpp"

namespace rectlab {

/// Exact Lebesgue measure of the union of the (origin-anchored) rectangles.
///
/// The union is a down-set, so sweeping the first axis from the longest side
/// downwards splits it into slabs whose cross-sections are unions of the
/// (n-1)-dimensional tails of the rectangles seen so far. Each slab recurses
/// one dimension down; a single remaining axis is just the longest side.
DyadicRational union_measure_anchored(const RectangleFamily& family);

}  // namespace rectlab
