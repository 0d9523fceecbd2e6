#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rectlab/constructions.hpp"
#include "rectlab/union_measure.hpp"

using namespace rectlab;

namespace {

RectangleFamily family(std::size_t dim, const std::vector<oracle::Exps>& rects) {
  RectangleFamily f(dim);
  for (const auto& r : rects) f.insert(DyadicRectangle(r));
  return f;
}

}  // namespace

TEST_CASE("worked union measures") {
  CHECK(union_measure_anchored(family(2, {{0, 1}, {1, 0}})).to_rational() == Rational(3, 4));
  CHECK(union_measure_anchored(family(3, {{1, 2, 3}})).to_rational() == Rational(1, 64));
  const auto hyper = hyperbolic_family(2, 3, DyadicRational::pow2(-3));
  CHECK(union_measure_anchored(hyper).to_rational() == Rational(5, 16));
  std::vector<oracle::Exps> raw;
  for (const auto& r : hyper) raw.emplace_back(r.exponents().begin(), r.exponents().end());
  CHECK(oracle::union_measure_raster(raw, 4) == Rational(5, 16));
}

TEST_CASE("union measure equals the raster oracle") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 300; ++t) {
    const std::size_t dim = 1 + t % 4;
    const std::uint32_t emax = dim == 4 ? 4 : 6;
    const auto rects = oracle::random_family(rng, dim, 1 + rng() % 8, emax);
    const auto fam = family(dim, rects);
    const auto exact = union_measure_anchored(fam).to_rational();
    CHECK(exact == oracle::union_measure_raster(rects, emax));

    // max |R| <= |union| <= sum |R|
    Rational largest = 0, total = 0;
    for (const auto& r : fam) {
      const auto m = rectangle_measure(r).to_rational();
      largest = std::max(largest, m);
      total += m;
    }
    CHECK(largest <= exact);
    CHECK(exact <= total);
  }
}

TEST_CASE("union measure is monotone under adding rectangles") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto rects = oracle::random_family(rng, 3, 7, 5);
    RectangleFamily grow(3);
    DyadicRational prev(0);
    for (const auto& r : rects) {
      grow.insert(DyadicRectangle(r));
      const auto m = union_measure_anchored(grow);
      CHECK(prev <= m);
      prev = m;
    }
  }
}

TEST_CASE("empty family is rejected") {
  CHECK_THROWS(union_measure_anchored(RectangleFamily(2)));
}
