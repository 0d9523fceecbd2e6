#include <doctest.h>

#include <cmath>
#include <random>

#include "rectlab/constructions.hpp"
#include "rectlab/error.hpp"
#include "rectlab/orlicz.hpp"

using namespace rectlab;

TEST_CASE("intervals enclose and stay narrow") {
  const auto l2 = Interval::ln2();
  CHECK(l2.lower_double() <= std::log(2.0));
  CHECK(l2.upper_double() >= std::log(2.0));
  CHECK(l2.relative_width() <= std::ldexp(1.0, -40));
  const Interval third(Rational(1, 3));
  CHECK(third.contains(Rational(1, 3)));
  CHECK_FALSE(third.is_point());
  CHECK(Interval(Rational(1, 4)).is_point());
  const auto x = (third * Interval(Rational(3))) - Interval(Rational(1));
  CHECK(x.contains(0));
  CHECK(certainly_lt(Interval(Rational(1)), l2 + l2));
  CHECK_THROWS_AS(Interval(Rational(0)).log(), InvalidArgument);
  CHECK_THROWS_AS(third / Interval(Rational(-1), Rational(1)), InvalidArgument);
}

TEST_CASE("Orlicz functions") {
  CHECK(OrliczFn::parse("p:1") == OrliczFn::power(1));
  CHECK(OrliczFn::parse("d:2") == OrliczFn::phi(2));
  CHECK_THROWS_AS(OrliczFn::parse("q:1"), InvalidArgument);
  CHECK_THROWS_AS(OrliczFn::parse("p:0"), InvalidArgument);
  CHECK_THROWS_AS(OrliczFn::parse("d:"), InvalidArgument);

  CHECK(OrliczFn::power(1).is_little_o_of_phi(1));
  CHECK_FALSE(OrliczFn::power(1).is_little_o_of_phi(0));
  CHECK_FALSE(OrliczFn::power(2).is_little_o_of_phi(5));
  CHECK(OrliczFn::phi(1).is_little_o_of_phi(2));
  CHECK_FALSE(OrliczFn::phi(2).is_little_o_of_phi(2));

  const auto phi2 = OrliczFn::phi(2);
  CHECK(*phi2.exact(Rational(1, 2)) == Rational(1, 2));
  CHECK(phi2(Rational(1)).contains(1));
  const auto v = phi2(Rational(3));
  const double want = 3 * (1 + std::pow(std::log(3.0), 2));
  CHECK(v.lower_double() <= want * (1 + 1e-15));
  CHECK(v.upper_double() >= want * (1 - 1e-15));
}

TEST_CASE("Phi_d is increasing and convex on a grid of arguments") {
  for (std::uint32_t d = 0; d <= 3; ++d) {
    const auto phi = OrliczFn::phi(d);
    for (int i = 1; i < 200; ++i) {
      const Rational a(i, 16), b(i + 1, 16), c(i + 2, 16);
      const auto fa = phi(a), fb = phi(b), fc = phi(c);
      CHECK(certainly_le(fa, fb));
      // Midpoint convexity: 2 phi(b) <= phi(a) + phi(c).
      const auto lhs = Interval(Rational(2)) * fb;
      const auto rhs = fa + fc;
      CHECK(lhs.lower() <= rhs.upper());
    }
  }
}

TEST_CASE("Orlicz integrals") {
  const GridSpec q1({1});
  const auto one = GridFunction::constant(q1, 1);
  const auto i1 = orlicz_integral(one, OrliczFn::phi(1));
  REQUIRE(i1.exact.has_value());
  CHECK(*i1.exact == 1);

  std::mt19937_64 rng(5);
  const GridSpec spec({2, 2});
  std::vector<std::int64_t> nums(16);
  for (auto& x : nums) x = static_cast<std::int64_t>(rng() % 40);
  const GridFunction f(spec, nums, 3);
  const auto lin = orlicz_integral(f, OrliczFn::phi(0), Rational(3, 2));
  REQUIRE(lin.exact.has_value());
  CHECK(*lin.exact == Rational(3, 2) * integrate(f).to_rational());

  // 2 chi_[0,1/2): (1/2) * 2 (1 + ln 2) = 1 + ln 2.
  const auto g = GridFunction::from_values(q1, std::vector<DyadicRational>{2, 0});
  const auto ig = orlicz_integral(g, OrliczFn::phi(1));
  CHECK_FALSE(ig.exact.has_value());
  CHECK(ig.value.certainly_ge(Rational(16931, 10000)));
  CHECK(ig.value.certainly_le(Rational(16932, 10000)));
  const double closed = 1 + std::log(2.0);
  CHECK(ig.value.lower_double() <= closed);
  CHECK(ig.value.upper_double() >= closed);
  CHECK(ig.value.relative_width() <= std::ldexp(1.0, -40));
}

TEST_CASE("weak type ratio") {
  const auto b = lemma1_bundle(2, 2);
  const auto zero = GridFunction::constant(b.spec, 0);
  const auto r0 = weak_type_ratio(b.family, zero, 1, 1, OrliczFn::power(1));
  CHECK(r0.level_measure.is_zero());
  CHECK(r0.ratio.contains(0));
  CHECK_THROWS_AS(weak_type_ratio(b.family, zero, 0, 1, OrliczFn::power(1)), InvalidArgument);

  // f = 2^{dk} chi_Theta with lambda just below 1: level set covers Y.
  const auto f = GridFunction::indicator(b.theta, DyadicRational(4));
  const auto r = weak_type_ratio(b.family, f, DyadicRational(mpz_class(1023), 10), 1, OrliczFn::phi(1));
  CHECK(r.level_measure >= b.measured.y_measure);
  CHECK(r.level_measure.to_rational() >= Rational(1, 8));

  // A larger family never shrinks the level set.
  RectangleFamily smaller(2);
  smaller.insert(b.family[0]);
  const auto rs = weak_type_ratio(smaller, f, DyadicRational(mpz_class(1023), 10), 1, OrliczFn::phi(1));
  CHECK(rs.level_measure <= r.level_measure);
}

TEST_CASE("kappa check on lemma1 bundles") {
  for (std::uint32_t n = 2; n <= 3; ++n) {
    for (std::uint32_t k = 1; k <= 5; ++k) {
      const auto report = kappa_check(lemma1_bundle(n, k));
      CAPTURE(n);
      CAPTURE(k);
      CHECK(report.hypotheses_met);
      CHECK(report.holds);
      CHECK(report.rhs.certainly_le(report.level_measure.to_rational()));
    }
  }
  const auto degenerate = kappa_check(lemma1_bundle(2, 0));
  CHECK(degenerate.holds);
}

TEST_CASE("divergence sweeps") {
  std::vector<CounterexampleBundle> two, three;
  for (std::uint32_t k = 1; k <= 5; ++k) two.push_back(lemma1_bundle(2, k));
  for (std::uint32_t k = 1; k <= 4; ++k) three.push_back(lemma1_bundle(3, k));

  const auto s = divergence_sweep(two, OrliczFn::power(1), 2);
  CHECK(s.diverging);
  // Two-valued f_k: ratio = (1 + k ln 2) / 2.
  for (const auto& e : s.entries) {
    const double closed = (1 + e.k * std::log(2.0)) / 2;
    CHECK(e.ratio.lower_double() <= closed * (1 + 1e-12));
    CHECK(e.ratio.upper_double() >= closed * (1 - 1e-12));
  }
  CHECK(divergence_sweep(three, OrliczFn::phi(1), 2).strictly_increasing);
  CHECK(divergence_sweep(three, OrliczFn::power(1), 2).diverging);
  CHECK(divergence_sweep(two, OrliczFn::phi(0), 2).strictly_increasing);
  CHECK_THROWS_AS(divergence_sweep(two, OrliczFn::phi(1), 2), InvalidArgument);
  CHECK_THROWS_AS(divergence_sweep(three, OrliczFn::phi(2), 2), InvalidArgument);
}

TEST_CASE("instance checks") {
  const auto fam = cylinder_family(hyperbolic_family(2, 3, DyadicRational::pow2(-6)));
  const GridSpec spec({3, 6, 0});
  const auto zero = GridFunction::constant(spec, 0);
  const auto z = guzman_instance_check(fam, zero, 1, GuzmanMode::prop1);
  CHECK(z.holds);
  CHECK(z.level_measure.is_zero());

  const auto full = GridFunction::constant(spec, 1);
  const auto r = guzman_instance_check(fam, full, DyadicRational::pow2(-1), GuzmanMode::prop1);
  CHECK(r.holds);
  CHECK(r.level_measure == DyadicRational(1));
  CHECK(r.rhs.certainly_ge(1));

  const auto c2 = guzman_instance_check(fam, full, DyadicRational::pow2(-1), GuzmanMode::prop2, 4);
  CHECK_FALSE(c2.hypotheses_met);
  CHECK_FALSE(c2.holds);
  CHECK(guzman_instance_check(fam, full, DyadicRational::pow2(-1), GuzmanMode::prop2, 5).holds);
}
