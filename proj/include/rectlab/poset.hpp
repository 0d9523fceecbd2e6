#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rectlab/rectangle.hpp"

namespace rectlab {

struct WidthResult {
  std::size_t width = 0;
  /// Pairwise incomparable rectangles, as many as there are chains.
  std::vector<DyadicRectangle> antichain;
  /// Partition of the family into chains, each listed from smallest to largest.
  std::vector<std::vector<DyadicRectangle>> chains;
};

/// Largest antichain under inclusion, with a minimum chain cover certifying it.
///
/// Chain cover size is |F| minus a maximum matching in the bipartite graph of
/// proper inclusions; the antichain comes from the König vertex cover of that
/// matching.
WidthResult width(const RectangleFamily& family);

/// Every pair of rectangles is comparable.
bool is_chain(const RectangleFamily& family);

/// Coordinate projection, keeping the listed (0-based) axes in order. Images
/// that coincide are merged.
RectangleFamily project(const RectangleFamily& family, std::span<const std::size_t> axes);
RectangleFamily project(const RectangleFamily& family, std::size_t first, std::size_t second);

enum class WidthTrend { bounded, growing };

struct Weak11Report {
  /// (k, width) per generated family; a single entry for a plain family.
  std::vector<std::pair<std::uint32_t, std::size_t>> widths;
  std::size_t threshold = 0;
  WidthTrend verdict = WidthTrend::bounded;
  std::string note;
};

/// Finite family: bounded iff width <= threshold.
Weak11Report weak11_verdict(const RectangleFamily& family, std::size_t threshold);

/// k-indexed generator: growing iff the widths never decrease and the last
/// exceeds the first. This describes the finite sweep only.
Weak11Report weak11_verdict(const std::function<RectangleFamily(std::uint32_t)>& generator, std::uint32_t kmin,
                            std::uint32_t kmax);

inline constexpr std::size_t kPropertyCSearchCap = 20;

struct PropertyCResult {
  /// Largest subfamily with pairwise comparable projections and pairwise
  /// incomparable rectangles.
  std::vector<DyadicRectangle> witness;
  /// Smallest k for which (C) holds on this family: witness size + 1.
  std::size_t required_k = 1;
  /// required_k <= kmax.
  bool holds = true;
};

PropertyCResult property_c_check(const RectangleFamily& family, std::size_t first_axis, std::size_t second_axis,
                                 std::size_t kmax, std::size_t search_cap = kPropertyCSearchCap);

}  // namespace rectlab
