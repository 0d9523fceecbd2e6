#include "rectlab/maximal.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "rectlab/error.hpp"

namespace rectlab {

namespace {

struct Window {
  std::vector<std::size_t> extent;  // cells covered per axis
  std::uint32_t log_cells = 0;      // log2 of the window's cell count
};

Window window_of(const DyadicRectangle& rect, const GridSpec& spec) {
  if (rect.dim() != spec.dim()) throw DimensionMismatch("rectangle and grid dimensions differ");
  Window w;
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    const auto m = rect.exponent(i);
    if (m > spec.resolution(i)) {
      throw ResolutionError("rectangle " + rect.to_string() + " is finer than the grid on axis " + std::to_string(i));
    }
    if (m < spec.period_exponent(i)) {
      throw ResolutionError("rectangle " + rect.to_string() + " is longer than the torus period on axis " +
                            std::to_string(i));
    }
    const std::uint32_t bits = spec.resolution(i) - m;
    w.extent.push_back(std::size_t{1} << bits);
    w.log_cells += bits;
  }
  return w;
}

// Applies op(line) to every line of `data` along `axis`.
template <class Op>
void for_each_line(std::vector<std::int64_t>& data, const GridSpec& spec, std::size_t axis, Op op) {
  const std::size_t n = spec.cells_on_axis(axis);
  if (n == 1) return;
  const std::size_t inner = spec.stride(axis);
  const std::size_t outer = data.size() / (n * inner);
  std::vector<std::int64_t> line(n);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) {
      const std::size_t base = o * n * inner + in;
      for (std::size_t j = 0; j < n; ++j) line[j] = data[base + j * inner];
      op(line);
      for (std::size_t j = 0; j < n; ++j) data[base + j * inner] = line[j];
    }
  }
}

// out[c] = sum_{s < w} in[(c + s) mod n]
void circular_window_sum(std::vector<std::int64_t>& line, std::size_t w, std::vector<std::int64_t>& prefix) {
  const std::size_t n = line.size();
  prefix.resize(n + 1);
  prefix[0] = 0;
  for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = checked_add(prefix[j], line[j]);
  const std::int64_t total = prefix[n];
  for (std::size_t c = 0; c < n; ++c) {
    line[c] = c + w <= n ? prefix[c + w] - prefix[c] : total - prefix[c] + prefix[c + w - n];
  }
}

// out[c] = max_{s < w} in[(c - s) mod n], via a monotone queue of candidate
// positions t = c-w+1 .. c taken modulo n.
void circular_window_max(std::vector<std::int64_t>& line, std::size_t w, std::vector<std::int64_t>& scratch,
                         std::vector<std::ptrdiff_t>& queue) {
  const std::size_t n = line.size();
  if (w == 1) return;
  if (w >= n) {
    std::fill(line.begin(), line.end(), *std::max_element(line.begin(), line.end()));
    return;
  }
  scratch = line;
  const auto sn = static_cast<std::ptrdiff_t>(n);
  const auto value = [&](std::ptrdiff_t t) { return scratch[static_cast<std::size_t>(t < 0 ? t + sn : t)]; };
  queue.resize(n + w);
  std::size_t head = 0, tail = 0;
  const auto first = -static_cast<std::ptrdiff_t>(w) + 1;
  for (std::ptrdiff_t t = first; t < sn; ++t) {
    const std::int64_t v = value(t);
    while (tail > head && value(queue[tail - 1]) <= v) --tail;
    queue[tail++] = t;
    if (queue[head] <= t - static_cast<std::ptrdiff_t>(w)) ++head;
    if (t >= 0) line[static_cast<std::size_t>(t)] = value(queue[head]);
  }
}

std::vector<std::int64_t> abs_numerators(const GridFunction& f) {
  const GridFunction g = f.abs();
  return {g.numerators().begin(), g.numerators().end()};
}

// Window sums of |f| anchored at each cell; the average is sums / 2^(e + log_cells).
std::vector<std::int64_t> anchored_sums(const GridFunction& f, const Window& w) {
  std::vector<std::int64_t> data = abs_numerators(f);
  std::vector<std::int64_t> prefix;
  for (std::size_t axis = 0; axis < f.spec().dim(); ++axis) {
    const std::size_t extent = w.extent[axis];
    if (extent == 1) continue;
    for_each_line(data, f.spec(), axis, [&](std::vector<std::int64_t>& line) { circular_window_sum(line, extent, prefix); });
  }
  return data;
}

}  // namespace

GridFunction box_average_field(const GridFunction& f, const DyadicRectangle& rect) {
  const Window w = window_of(rect, f.spec());
  return GridFunction(f.spec(), anchored_sums(f, w), f.exponent() + w.log_cells).normalized();
}

GridFunction maximal_function(const GridFunction& f, const RectangleFamily& family) {
  if (family.empty()) throw InvalidArgument("maximal function over an empty family");
  const GridSpec& spec = f.spec();
  std::vector<Window> windows;
  std::uint32_t common = 0;
  for (const auto& r : family) {
    windows.push_back(window_of(r, spec));
    common = std::max(common, windows.back().log_cells);
  }

  std::vector<std::int64_t> result(spec.cell_count(), 0);
  std::vector<std::int64_t> scratch;
  std::vector<std::ptrdiff_t> queue;
  for (const auto& w : windows) {
    std::vector<std::int64_t> field = anchored_sums(f, w);
    for (std::size_t axis = 0; axis < spec.dim(); ++axis) {
      const std::size_t extent = w.extent[axis];
      if (extent == 1) continue;
      for_each_line(field, spec, axis,
                    [&](std::vector<std::int64_t>& line) { circular_window_max(line, extent, scratch, queue); });
    }
    // Express on the common exponent f.exponent() + common.
    const std::uint32_t shift = common - w.log_cells;
    for (std::size_t i = 0; i < field.size(); ++i) result[i] = std::max(result[i], checked_shift(field[i], shift));
  }
  return GridFunction(spec, std::move(result), f.exponent() + common).normalized();
}

GridFunction maximal_function_bruteforce(const GridFunction& f, const RectangleFamily& family) {
  if (family.empty()) throw InvalidArgument("maximal function over an empty family");
  const GridSpec& spec = f.spec();
  const std::size_t n = spec.dim();
  const GridFunction g = f.abs();

  std::uint32_t common = 0;
  std::vector<Window> windows;
  for (const auto& r : family) {
    windows.push_back(window_of(r, spec));
    common = std::max(common, windows.back().log_cells);
  }

  std::vector<__int128> best(spec.cell_count(), 0);
  std::vector<std::size_t> anchor(n), offset(n);
  for (const auto& w : windows) {
    std::size_t window_cells = 1;
    for (const auto e : w.extent) window_cells *= e;
    const auto covered = [&](std::size_t k) {
      // k-th cell of the window anchored at `anchor`, in mixed radix over extents.
      std::size_t cell = 0;
      for (std::size_t i = n; i-- > 0;) {
        offset[i] = k % w.extent[i];
        k /= w.extent[i];
        cell += ((anchor[i] + offset[i]) % spec.cells_on_axis(i)) * spec.stride(i);
      }
      return cell;
    };
    for (std::size_t a = 0; a < spec.cell_count(); ++a) {
      for (std::size_t i = 0; i < n; ++i) anchor[i] = spec.coordinate(a, i);
      __int128 sum = 0;
      for (std::size_t k = 0; k < window_cells; ++k) sum += g.numerator(covered(k));
      const __int128 scaled = sum << (common - w.log_cells);
      for (std::size_t k = 0; k < window_cells; ++k) {
        auto& slot = best[covered(k)];
        slot = std::max(slot, scaled);
      }
    }
  }

  std::vector<std::int64_t> nums(best.size());
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (best[i] > std::numeric_limits<std::int64_t>::max()) throw OverflowError("maximal value exceeds 64 bits");
    nums[i] = static_cast<std::int64_t>(best[i]);
  }
  return GridFunction(spec, std::move(nums), f.exponent() + common).normalized();
}

}  // namespace rectlab
