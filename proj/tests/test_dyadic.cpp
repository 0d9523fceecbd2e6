#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rectlab/error.hpp"
#include "rectlab/rectangle.hpp"

using namespace rectlab;

namespace {

DyadicRectangle rect(std::vector<std::uint32_t> e) { return DyadicRectangle(std::move(e)); }

}  // namespace

TEST_CASE("dyadic rationals are canonical") {
  const DyadicRational a(mpz_class(12), 4);
  CHECK(a.numerator() == 3);
  CHECK(a.exponent() == 2);
  CHECK(a.to_string() == "3/2^2");
  CHECK(DyadicRational(mpz_class(0), 7).exponent() == 0);
  CHECK(DyadicRational::parse("6/2^3") == DyadicRational(mpz_class(3), 2));
  CHECK(DyadicRational::parse("3/8") == DyadicRational(mpz_class(3), 3));
  CHECK(DyadicRational::parse("-5") == DyadicRational(-5));
  CHECK_THROWS_AS(DyadicRational::parse("1/3"), InvalidArgument);
  CHECK_THROWS_AS(DyadicRational::parse("x"), InvalidArgument);
  CHECK_THROWS_AS(DyadicRational::from_rational(Rational(1, 6)), InvalidArgument);
}

TEST_CASE("dyadic arithmetic matches rationals") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<std::uint32_t> ex(0, 40);
  for (int t = 0; t < 500; ++t) {
    const DyadicRational a(mpz_class(num(rng)), ex(rng));
    const DyadicRational b(mpz_class(num(rng)), ex(rng));
    CHECK((a + b).to_rational() == a.to_rational() + b.to_rational());
    CHECK((a - b).to_rational() == a.to_rational() - b.to_rational());
    CHECK((a * b).to_rational() == a.to_rational() * b.to_rational());
    CHECK(((a < b) == (a.to_rational() < b.to_rational())));
    CHECK((compare(a, b.to_rational()) == (a <=> b)));
    const auto sum = a + b;
    CHECK((sum.numerator() % 2 != 0 || sum.exponent() == 0));
  }
  CHECK(DyadicRational::pow2(-3).to_rational() == Rational(1, 8));
  CHECK(DyadicRational::pow2(5) == DyadicRational(32));
  CHECK(DyadicRational(mpz_class(5), 3).floor_log2() == -1);
  CHECK(DyadicRational(mpz_class(1), 3).floor_log2() == -3);
  CHECK(DyadicRational(12).floor_log2() == 3);
  CHECK(DyadicRational(mpz_class(1), 3).is_power_of_two());
  CHECK_FALSE(DyadicRational(3).is_power_of_two());
}

TEST_CASE("compare covers every relation") {
  CHECK(compare(rect({1, 1}), rect({1, 1})) == Relation::equal);
  CHECK(compare(rect({2, 0}), rect({0, 2})) == Relation::incomparable);
  CHECK(compare(rect({3, 3}), rect({1, 1})) == Relation::strict_subset);
  CHECK(compare(rect({1, 1}), rect({3, 3})) == Relation::strict_superset);
  CHECK(compare(rect({3, 1}), rect({1, 1})) == Relation::subset);
  CHECK(compare(rect({1, 1}), rect({1, 3})) == Relation::superset);
  CHECK_THROWS_AS(compare(rect({1}), rect({1, 1})), DimensionMismatch);
}

TEST_CASE("compare is a partial order") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto fam = oracle::random_family(rng, 3, 6, 3);
    for (const auto& a : fam) {
      CHECK(compare(rect(a), rect(a)) == Relation::equal);
      for (const auto& b : fam) {
        const bool ab = rect(a).contains(rect(b)), ba = rect(b).contains(rect(a));
        if (ab && ba) CHECK(a == b);
        CHECK(ab == oracle::contains(a, b));
        for (const auto& c : fam) {
          if (ab && rect(b).contains(rect(c))) CHECK(rect(a).contains(rect(c)));
        }
      }
    }
  }
}

TEST_CASE("rectangle measure") {
  CHECK(rectangle_measure(rect({0, 0, 0})) == DyadicRational(1));
  CHECK(rectangle_measure(rect({2, 3})).to_rational() == Rational(1, 32));
  CHECK(rectangle_measure(rect({1, 1, 1})).to_rational() == Rational(1, 8));
}

TEST_CASE("exponent cap") {
  CHECK_THROWS_AS(DyadicRectangle({31}), CapExceeded);
  CHECK_NOTHROW(DyadicRectangle({40}, 40));
  CHECK_THROWS_AS(DyadicRectangle({}), InvalidArgument);
}

TEST_CASE("dyadic cover") {
  const std::vector<Rational> a{Rational(3, 10), Rational(1)};
  CHECK(dyadic_cover(a) == rect({1, 0}));
  const std::vector<Rational> b{Rational(1, 4), Rational(1, 8)};
  CHECK(dyadic_cover(b) == rect({2, 3}));
  const std::vector<Rational> c{Rational(5, 8), Rational(5, 8)};
  CHECK(dyadic_cover(c) == rect({0, 0}));
  const std::vector<Rational> bad{Rational(0)};
  CHECK_THROWS_AS(dyadic_cover(bad), InvalidArgument);
  const std::vector<Rational> big{Rational(3, 2)};
  CHECK_THROWS_AS(dyadic_cover(big), InvalidArgument);
}

TEST_CASE("dyadic cover is minimal and within a factor 2^n") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> den(1, 300);
  for (int t = 0; t < 300; ++t) {
    std::vector<Rational> sides;
    Rational vol = 1;
    for (int i = 0; i < 3; ++i) {
      const long d = den(rng);
      std::uniform_int_distribution<long> num(1, d);
      Rational s(num(rng), d);
      s.canonicalize();
      sides.push_back(s);
      vol *= s;
    }
    const auto cover = dyadic_cover(sides);
    for (std::size_t i = 0; i < 3; ++i) {
      const Rational side = DyadicRational::pow2(-static_cast<long>(cover.exponent(i))).to_rational();
      CHECK(side >= sides[i]);
      CHECK(side / 2 < sides[i]);
    }
    CHECK(rectangle_measure(cover).to_rational() < 8 * vol);
  }
  // A dyadic rectangle covers itself.
  const std::vector<Rational> own{Rational(1, 2), Rational(1, 16), Rational(1)};
  CHECK(dyadic_cover(own) == rect({1, 4, 0}));
}

TEST_CASE("families drop duplicates and keep insertion order") {
  RectangleFamily f(2, "demo");
  CHECK(f.insert(rect({1, 0})));
  CHECK(f.insert(rect({0, 1})));
  CHECK_FALSE(f.insert(rect({1, 0})));
  CHECK(f.size() == 2);
  CHECK(f[0] == rect({1, 0}));
  CHECK_THROWS_AS(f.insert(rect({1})), DimensionMismatch);
}

TEST_CASE("strict chains") {
  const StrictChain c({rect({3, 2}), rect({2, 1}), rect({1, 0})});
  CHECK(c.top() == 2);
  CHECK(c.exponent(1, 2) == 0);
  CHECK_THROWS_AS(StrictChain({rect({2, 2}), rect({2, 1})}), InvalidArgument);
  CHECK_THROWS_AS(StrictChain({rect({1, 1}), rect({2, 2})}), InvalidArgument);
  CHECK(strictly_nested(rect({2, 2}), rect({1, 1})));
  CHECK_FALSE(strictly_nested(rect({2, 1}), rect({1, 1})));
}
