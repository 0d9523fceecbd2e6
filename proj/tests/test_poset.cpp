#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rectlab/constructions.hpp"
#include "rectlab/error.hpp"
#include "rectlab/poset.hpp"

using namespace rectlab;

namespace {

RectangleFamily family(std::size_t dim, const std::vector<oracle::Exps>& rects) {
  RectangleFamily f(dim);
  for (const auto& r : rects) f.insert(DyadicRectangle(r));
  return f;
}

bool pairwise_incomparable(const std::vector<DyadicRectangle>& rs) {
  for (std::size_t a = 0; a < rs.size(); ++a) {
    for (std::size_t b = a + 1; b < rs.size(); ++b) {
      if (comparable(rs[a], rs[b])) return false;
    }
  }
  return true;
}

// The chain cover partitions the family and each part is totally ordered.
void check_cover(const RectangleFamily& fam, const WidthResult& w) {
  std::size_t covered = 0;
  for (const auto& chain : w.chains) {
    covered += chain.size();
    for (std::size_t i = 1; i < chain.size(); ++i) CHECK(chain[i].contains(chain[i - 1]));
    for (const auto& r : chain) CHECK(fam.contains(r));
  }
  CHECK(covered == fam.size());
  CHECK(w.antichain.size() == w.chains.size());
  CHECK(pairwise_incomparable(w.antichain));
}

}  // namespace

TEST_CASE("width examples") {
  const auto chain = default_chain(3, 4).as_family();
  CHECK(width(chain).width == 1);
  CHECK(is_chain(chain));
  const auto two = family(2, {{0, 1}, {1, 0}});
  CHECK(width(two).width == 2);
  CHECK_FALSE(is_chain(two));
  for (std::uint32_t k = 0; k <= 6; ++k) {
    const auto h = hyperbolic_family(2, k, DyadicRational::pow2(-static_cast<long>(k)));
    const auto w = width(h);
    CHECK(w.width == k + 1);
    check_cover(h, w);
  }
  CHECK(width(RectangleFamily(2)).width == 0);
}

TEST_CASE("width equals exhaustive antichain search") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 200; ++t) {
    const std::size_t dim = 2 + t % 3;
    const auto rects = oracle::random_family(rng, dim, 1 + rng() % 12, 4);
    const auto fam = family(dim, rects);
    const auto w = width(fam);
    CHECK(w.width == oracle::max_antichain(rects));
    check_cover(fam, w);
  }
}

TEST_CASE("projections") {
  const auto f = family(3, {{1, 2, 3}});
  const auto p = project(f, 0, 2);
  CHECK(p.size() == 1);
  CHECK(p[0] == DyadicRectangle({1, 3}));
  CHECK_THROWS_AS(project(f, 0, 3), InvalidArgument);
  CHECK_THROWS_AS(project(f, 1, 1), InvalidArgument);
}

TEST_CASE("chains project to chains") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 500; ++t) {
    const std::size_t dim = 3 + t % 2;
    // Walk upward from a random corner by nonnegative steps.
    oracle::Exps cur(dim);
    for (auto& x : cur) x = static_cast<std::uint32_t>(rng() % 3);
    std::vector<oracle::Exps> rects{cur};
    const std::size_t len = 1 + rng() % 6;
    for (std::size_t s = 0; s < len; ++s) {
      for (auto& x : cur) x += static_cast<std::uint32_t>(rng() % 2);
      rects.push_back(cur);
    }
    const auto fam = family(dim, rects);
    REQUIRE(is_chain(fam));
    for (std::size_t j = 1; j < dim; ++j) CHECK(is_chain(project(fam, 0, j)));
  }
}

TEST_CASE("chain projections force a chain when first sides are distinct") {
  std::mt19937_64 rng(78);
  int tested = 0;
  for (int t = 0; t < 2000 && tested < 500; ++t) {
    const std::size_t dim = 3 + t % 2;
    const auto rects = oracle::random_family(rng, dim, 2 + rng() % 4, 3);
    std::vector<std::uint32_t> first;
    for (const auto& r : rects) first.push_back(r[0]);
    std::sort(first.begin(), first.end());
    if (std::adjacent_find(first.begin(), first.end()) != first.end()) continue;
    ++tested;
    const auto fam = family(dim, rects);
    bool all = true;
    for (std::size_t j = 1; j < dim; ++j) all = all && is_chain(project(fam, 0, j));
    CHECK(is_chain(fam) == all);
  }
  CHECK(tested == 500);
}

TEST_CASE("equal first sides break the converse") {
  // Both x1xj projections are chains, yet the rectangles are incomparable.
  const auto fam = family(3, {{1, 1, 0}, {1, 0, 1}});
  CHECK(is_chain(project(fam, 0, 1)));
  CHECK(is_chain(project(fam, 0, 2)));
  CHECK_FALSE(is_chain(fam));
}

TEST_CASE("weak (1,1) verdicts") {
  const auto chain = default_chain(2, 3).as_family();
  CHECK(weak11_verdict(chain, 1).verdict == WidthTrend::bounded);
  CHECK(weak11_verdict(cylinder_family(chain), 1).verdict == WidthTrend::bounded);
  const auto report = weak11_verdict(
      [](std::uint32_t k) { return hyperbolic_family(2, k, DyadicRational::pow2(-static_cast<long>(k))); }, 1, 6);
  std::vector<std::size_t> widths;
  for (const auto& [k, w] : report.widths) widths.push_back(w);
  CHECK(widths == std::vector<std::size_t>{2, 3, 4, 5, 6, 7});
  CHECK(report.verdict == WidthTrend::growing);
  const auto flat = weak11_verdict([](std::uint32_t k) { return default_chain(2, k).as_family(); }, 1, 6);
  CHECK(flat.verdict == WidthTrend::bounded);
}

TEST_CASE("property (C)") {
  // [0,2^-j] x [0,1] x [0,1]: a chain, so no two incomparable members exist.
  RectangleFamily strips(3);
  for (std::uint32_t j = 0; j <= 3; ++j) strips.insert(DyadicRectangle({j, 0, 0}));
  const auto s = property_c_check(strips, 1, 2, 8);
  CHECK(s.holds);
  CHECK(s.required_k == 2);

  const auto empty = property_c_check(RectangleFamily(3), 1, 2, 8);
  CHECK(empty.holds);
  CHECK(empty.required_k == 1);

  for (std::uint32_t k = 1; k <= 5; ++k) {
    const auto cyl = cylinder_family(hyperbolic_family(2, k, DyadicRational::pow2(-static_cast<long>(k))));
    const auto c = property_c_check(cyl, 1, 2, k + 1);
    CHECK(c.witness.size() == k + 1);
    CHECK(pairwise_incomparable(c.witness));
    CHECK_FALSE(c.holds);
    CHECK(property_c_check(cyl, 1, 2, k + 2).holds);
  }

  RectangleFamily big(2);
  for (std::uint32_t j = 0; j <= 20; ++j) big.insert(DyadicRectangle({j, 20 - j}));
  CHECK_THROWS_AS(property_c_check(big, 0, 1, 8), CapExceeded);
}

TEST_CASE("property (C) witness is the exhaustive optimum") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 60; ++t) {
    const auto rects = oracle::random_family(rng, 3, 2 + rng() % 9, 3);
    const auto fam = family(3, rects);
    const auto c = property_c_check(fam, 1, 2, 100);
    // Reference: largest subset with comparable projections and incomparable rectangles.
    std::size_t best = 0;
    const std::size_t m = rects.size();
    for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
      bool ok = true;
      for (std::size_t a = 0; a < m && ok; ++a) {
        for (std::size_t b = a + 1; b < m && ok; ++b) {
          if (!(mask >> a & 1U) || !(mask >> b & 1U)) continue;
          const oracle::Exps pa{rects[a][1], rects[a][2]}, pb{rects[b][1], rects[b][2]};
          ok = oracle::comparable(pa, pb) && !oracle::comparable(rects[a], rects[b]);
        }
      }
      if (ok) best = std::max<std::size_t>(best, __builtin_popcount(mask));
    }
    CHECK(c.witness.size() == best);
  }
}
