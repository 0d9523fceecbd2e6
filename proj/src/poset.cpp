#include "rectlab/poset.hpp"

#include <algorithm>
#include <bit>

#include "rectlab/error.hpp"

namespace rectlab {

namespace {

// Kuhn's augmenting paths on the bipartite graph left -> right.
class Matching {
 public:
  explicit Matching(const std::vector<std::vector<std::size_t>>& adj)
      : adj_(adj), match_left_(adj.size(), kNone), match_right_(adj.size(), kNone) {
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      seen_.assign(adj_.size(), false);
      augment(u);
    }
  }

  static constexpr std::size_t kNone = ~std::size_t{0};

  std::size_t size() const {
    return static_cast<std::size_t>(std::count_if(match_left_.begin(), match_left_.end(),
                                                  [](std::size_t v) { return v != kNone; }));
  }
  const std::vector<std::size_t>& left() const { return match_left_; }
  const std::vector<std::size_t>& right() const { return match_right_; }

 private:
  bool augment(std::size_t u) {
    for (const auto v : adj_[u]) {
      if (seen_[v]) continue;
      seen_[v] = true;
      if (match_right_[v] == kNone || augment(match_right_[v])) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<bool> seen_;
};

}  // namespace

WidthResult width(const RectangleFamily& family) {
  const auto& rects = family.rectangles();
  const std::size_t n = rects.size();
  WidthResult out;
  if (n == 0) return out;

  // Edge u -> v when rect u is a proper subset of rect v (transitively closed).
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && rects[v].contains(rects[u])) adj[u].push_back(v);
    }
  }
  const Matching matching(adj);

  // Chains: follow matched edges from every element that is nobody's successor.
  for (std::size_t start = 0; start < n; ++start) {
    if (matching.right()[start] != Matching::kNone) continue;
    std::vector<DyadicRectangle> chain;
    for (std::size_t cur = start; cur != Matching::kNone; cur = matching.left()[cur]) chain.push_back(rects[cur]);
    out.chains.push_back(std::move(chain));
  }
  out.width = out.chains.size();

  // König: Z = vertices reachable from unmatched left vertices by alternating
  // paths. Cover = (L \ Z) ∪ (R ∩ Z); elements in neither side form the antichain.
  std::vector<bool> left_reached(n, false), right_reached(n, false);
  std::vector<std::size_t> stack;
  for (std::size_t u = 0; u < n; ++u) {
    if (matching.left()[u] == Matching::kNone) {
      left_reached[u] = true;
      stack.push_back(u);
    }
  }
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (const auto v : adj[u]) {
      if (right_reached[v] || matching.left()[u] == v) continue;
      right_reached[v] = true;
      const std::size_t w = matching.right()[v];
      if (w != Matching::kNone && !left_reached[w]) {
        left_reached[w] = true;
        stack.push_back(w);
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    const bool in_cover = !left_reached[x] || right_reached[x];
    if (!in_cover) out.antichain.push_back(rects[x]);
  }
  return out;
}

bool is_chain(const RectangleFamily& family) {
  const auto& rects = family.rectangles();
  for (std::size_t a = 0; a < rects.size(); ++a) {
    for (std::size_t b = a + 1; b < rects.size(); ++b) {
      if (!comparable(rects[a], rects[b])) return false;
    }
  }
  return true;
}

RectangleFamily project(const RectangleFamily& family, std::span<const std::size_t> axes) {
  for (const auto a : axes) {
    if (a >= family.dim()) throw InvalidArgument("projection axis " + std::to_string(a) + " out of range");
  }
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      if (axes[i] == axes[j]) throw InvalidArgument("projection axes must be distinct");
    }
  }
  RectangleFamily out(axes.size(), family.label());
  for (const auto& r : family) out.insert(r.projected(axes));
  return out;
}

RectangleFamily project(const RectangleFamily& family, std::size_t first, std::size_t second) {
  const std::size_t axes[] = {first, second};
  return project(family, axes);
}

Weak11Report weak11_verdict(const RectangleFamily& family, std::size_t threshold) {
  Weak11Report report;
  report.threshold = threshold;
  const std::size_t w = width(family).width;
  report.widths.emplace_back(0, w);
  report.verdict = w <= threshold ? WidthTrend::bounded : WidthTrend::growing;
  report.note = report.verdict == WidthTrend::bounded ? "width within threshold: weak (1,1) regime"
                                                      : "width above threshold: infinite-width regime";
  return report;
}

Weak11Report weak11_verdict(const std::function<RectangleFamily(std::uint32_t)>& generator, std::uint32_t kmin,
                            std::uint32_t kmax) {
  if (kmin > kmax) throw InvalidArgument("empty k range");
  Weak11Report report;
  for (std::uint32_t k = kmin; k <= kmax; ++k) report.widths.emplace_back(k, width(generator(k)).width);
  const bool monotone = std::is_sorted(report.widths.begin(), report.widths.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
  const bool grew = report.widths.back().second > report.widths.front().second;
  report.threshold = report.widths.front().second;
  report.verdict = monotone && grew ? WidthTrend::growing : WidthTrend::bounded;
  report.note = report.verdict == WidthTrend::growing
                    ? "width grows across the sweep: infinite-width regime (finite-sweep evidence only)"
                    : "width does not grow across the sweep: bounded-width regime (finite-sweep evidence only)";
  return report;
}

PropertyCResult property_c_check(const RectangleFamily& family, std::size_t first_axis, std::size_t second_axis,
                                 std::size_t kmax, std::size_t search_cap) {
  const auto& rects = family.rectangles();
  const std::size_t n = rects.size();
  if (n > search_cap) {
    throw CapExceeded("property (C) search is capped at " + std::to_string(search_cap) + " rectangles, got " +
                      std::to_string(n));
  }
  PropertyCResult result;
  if (n == 0) {
    result.holds = kmax >= 1;
    return result;
  }
  if (first_axis >= family.dim() || second_axis >= family.dim() || first_axis == second_axis) {
    throw InvalidArgument("invalid projection plane");
  }
  const std::size_t plane[] = {first_axis, second_axis};

  // Compatible pairs: comparable projections, incomparable rectangles.
  std::vector<std::uint32_t> compatible(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      if (comparable(rects[a].projected(plane), rects[b].projected(plane)) && !comparable(rects[a], rects[b])) {
        compatible[a] |= std::uint32_t{1} << b;
      }
    }
  }

  // Maximum clique by depth-first search in index order; the first maximum
  // found is the lexicographically smallest one.
  std::vector<std::size_t> best, current;
  std::function<void(std::uint32_t)> extend = [&](std::uint32_t candidates) {
    if (current.size() > best.size()) best = current;
    while (candidates) {
      if (current.size() + static_cast<std::size_t>(std::popcount(candidates)) <= best.size()) return;
      const auto v = static_cast<std::size_t>(std::countr_zero(candidates));
      candidates &= candidates - 1;
      current.push_back(v);
      extend(candidates & compatible[v]);
      current.pop_back();
    }
  };
  extend(n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);

  for (const auto i : best) result.witness.push_back(rects[i]);
  result.required_k = best.size() + 1;
  result.holds = result.required_k <= kmax;
  return result;
}

}  // namespace rectlab
