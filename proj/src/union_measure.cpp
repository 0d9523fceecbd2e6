#include "rectlab/union_measure.hpp"

#include <algorithm>
#include <span>
#include <vector>

#include "rectlab/error.hpp"

namespace rectlab {

namespace {

using Row = std::span<const std::uint32_t>;

DyadicRational side_length(std::uint32_t m) { return DyadicRational::pow2(-static_cast<long>(m)); }

DyadicRational slab_measure(std::vector<Row> rows, std::size_t axis) {
  const std::size_t dim = rows.front().size();
  if (axis + 1 == dim) {
    std::uint32_t coarsest = rows.front()[axis];
    for (const auto& r : rows) coarsest = std::min(coarsest, r[axis]);
    return side_length(coarsest);
  }
  std::sort(rows.begin(), rows.end(), [axis](const Row& a, const Row& b) { return a[axis] < b[axis]; });

  DyadicRational total;
  std::vector<Row> active;
  active.reserve(rows.size());
  std::size_t i = 0;
  while (i < rows.size()) {
    const std::uint32_t m = rows[i][axis];
    while (i < rows.size() && rows[i][axis] == m) active.push_back(rows[i++]);
    // Slab (2^-next, 2^-m] on this axis sees exactly the active rectangles.
    DyadicRational width = side_length(m);
    if (i < rows.size()) width -= side_length(rows[i][axis]);
    total += width * slab_measure(active, axis + 1);
  }
  return total;
}

}  // namespace

DyadicRational union_measure_anchored(const RectangleFamily& family) {
  if (family.empty()) throw InvalidArgument("union measure of an empty family");
  std::vector<Row> rows;
  rows.reserve(family.size());
  for (const auto& r : family) rows.push_back(r.exponents());
  return slab_measure(std::move(rows), 0);
}

}  // namespace rectlab
