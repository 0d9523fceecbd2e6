#include "rectlab/orlicz.hpp"

#include <charconv>
#include <map>

#include "rectlab/error.hpp"
#include "rectlab/maximal.hpp"
#include "rectlab/poset.hpp"

namespace rectlab {

namespace {

std::uint32_t parse_uint(std::string_view text, const std::string& whole) {
  std::uint32_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) throw InvalidArgument("bad Orlicz function '" + whole + "'");
  return v;
}

Rational rational_pow(const Rational& base, std::uint32_t e) {
  Rational r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

// f_k = 2^{dk} chi_Theta / c'_eff, with c'_eff the largest power of two <= c'.
std::optional<DyadicRational> normalizer(const CounterexampleBundle& b) {
  const auto& cp = b.measured.c_prime;
  if (cp.sign() <= 0) return std::nullopt;
  return DyadicRational::pow2(cp.floor_log2());
}

GridFunction test_function(const CounterexampleBundle& b, const DyadicRational& c_prime) {
  const long dk = static_cast<long>(b.d) * b.k;
  return GridFunction::indicator(b.theta, DyadicRational::pow2(dk - c_prime.floor_log2()));
}

Interval constant_ratio(const Interval& num, const Interval& den) {
  if (den.upper() == 0) return Interval();
  return num / den;
}

}  // namespace

OrliczFn OrliczFn::power(std::uint32_t p) {
  if (p < 1) throw InvalidArgument("power Orlicz function needs p >= 1");
  return {Kind::power, p};
}

OrliczFn OrliczFn::phi(std::uint32_t d) { return {Kind::phi, d}; }

OrliczFn OrliczFn::parse(const std::string& text) {
  if (text.size() < 3 || text[1] != ':') throw InvalidArgument("bad Orlicz function '" + text + "', want p:P or d:D");
  const auto value = parse_uint(std::string_view(text).substr(2), text);
  if (text[0] == 'p') return power(value);
  if (text[0] == 'd') return phi(value);
  throw InvalidArgument("bad Orlicz function '" + text + "', want p:P or d:D");
}

std::string OrliczFn::to_string() const {
  return (kind_ == Kind::power ? "p:" : "d:") + std::to_string(parameter_);
}

std::optional<Rational> OrliczFn::exact(const Rational& t) const {
  if (kind_ == Kind::power) return rational_pow(t, parameter_);
  if (t <= 1 || parameter_ == 0) return t;
  return std::nullopt;
}

Interval OrliczFn::operator()(const Rational& t) const {
  if (t < 0) throw InvalidArgument("Orlicz function evaluated at a negative argument");
  if (const auto e = exact(t)) return Interval(*e);
  const Interval x(t);
  return x * (Interval(Rational(1)) + x.log().pow(parameter_));
}

bool OrliczFn::is_little_o_of_phi(std::uint32_t d) const {
  if (kind_ == Kind::power) return parameter_ == 1 && d >= 1;
  return parameter_ < d;
}

OrliczIntegral orlicz_integral(const GridFunction& f, const OrliczFn& phi, const Rational& scale) {
  if (scale < 0) throw InvalidArgument("negative scale");
  std::map<std::int64_t, std::uint64_t> histogram;
  for (const auto v : f.numerators()) ++histogram[v < 0 ? -v : v];

  const Rational unit = pow2_rational(-static_cast<long>(f.exponent()));
  const Rational cell = f.spec().cell_volume().to_rational();
  OrliczIntegral out;
  Rational exact_sum = 0;
  bool exact = true;
  for (const auto& [num, count] : histogram) {
    const Rational t = scale * Rational(mpz_class(num)) * unit;
    const Rational weight = cell * Rational(mpz_class(std::to_string(count)));
    if (const auto e = phi.exact(t)) {
      exact_sum += *e * weight;
    } else {
      exact = false;
      out.value += phi(t) * Interval(weight);
    }
  }
  out.value += Interval(exact_sum);
  if (exact) out.exact = exact_sum;
  return out;
}

std::string to_string(Certainty c) {
  switch (c) {
    case Certainty::holds: return "holds";
    case Certainty::fails: return "fails";
    case Certainty::undecided: return "undecided";
  }
  return "undecided";
}

WeakTypeReport weak_type_ratio(const RectangleFamily& family, const GridFunction& f, const DyadicRational& lambda,
                               const Rational& C, const OrliczFn& phi) {
  if (lambda.sign() <= 0) throw InvalidArgument("lambda must be positive");
  WeakTypeReport r;
  r.lambda = lambda;
  r.C = C;
  r.level_measure = measure(superlevel(maximal_function(f, family), lambda, true));
  r.integral = orlicz_integral(f, phi, C / lambda.to_rational());
  r.ratio = constant_ratio(Interval(r.level_measure), r.integral.value);
  const Rational level = r.level_measure.to_rational();
  if (r.integral.value.certainly_ge(level)) {
    r.verdict = Certainty::holds;
  } else if (r.integral.value.certainly_le(level) && r.integral.value.upper() < level) {
    r.verdict = Certainty::fails;
  }
  return r;
}

KappaReport kappa_check(const CounterexampleBundle& bundle) {
  KappaReport r;
  r.k = bundle.k;
  r.d = bundle.d;
  r.hypotheses = check_hypotheses(bundle);
  r.hypotheses_met = r.hypotheses.contained && r.hypotheses.measure_bound && r.hypotheses.maximal_bound;
  r.witness_cell = bundle.measured.min_cell;
  r.c_prime_used = normalizer(bundle);
  if (!r.c_prime_used) {
    r.note = "hypothesis (iii) fails: M chi_Theta vanishes at cell " + std::to_string(r.witness_cell) + " of Y";
    return r;
  }

  const auto fk = test_function(bundle, *r.c_prime_used);
  // M f_k >= 1 exactly where M chi_Theta >= c'_eff 2^{-dk}.
  const auto m = maximal_function(GridFunction::indicator(bundle.theta), bundle.family);
  const long dk = static_cast<long>(bundle.d) * bundle.k;
  r.level_measure = measure(superlevel(m, r.c_prime_used->shifted(-dk), false));
  r.integral = orlicz_integral(fk, OrliczFn::phi(bundle.d)).value;
  const Rational factor =
      bundle.claimed_c * r.c_prime_used->to_rational() / rational_pow(Rational(bundle.d), bundle.d);
  r.rhs = Interval(factor) * r.integral;

  const bool inequality = r.rhs.certainly_le(r.level_measure.to_rational());
  r.holds = r.hypotheses_met && inequality;
  if (!r.hypotheses_met) {
    r.note = std::string("hypotheses not met:") + (r.hypotheses.contained ? "" : " (i)") +
             (r.hypotheses.measure_bound ? "" : " (ii)") + (r.hypotheses.maximal_bound ? "" : " (iii)") +
             "; min M witness cell " + std::to_string(r.witness_cell);
  } else if (!inequality) {
    r.note = "level measure below the certified right-hand side";
  }
  return r;
}

SweepReport divergence_sweep(const std::vector<CounterexampleBundle>& bundles, const OrliczFn& phi,
                             const Rational& C) {
  if (bundles.empty()) throw InvalidArgument("empty sweep");
  if (C <= 0) throw InvalidArgument("C must be positive");
  SweepReport report;
  for (const auto& b : bundles) {
    if (!phi.is_little_o_of_phi(b.d)) {
      throw InvalidArgument(phi.to_string() + " is not o(Phi_" + std::to_string(b.d) + "); the sweep would stay bounded");
    }
    SweepEntry e;
    e.k = b.k;
    if (const auto cp = normalizer(b)) {
      const auto fk = test_function(b, *cp);
      e.numerator = orlicz_integral(fk, OrliczFn::phi(b.d)).value;
      e.denominator = orlicz_integral(fk, phi, C).value;
      e.valid = e.denominator.lower() > 0;
      if (e.valid) e.ratio = e.numerator / e.denominator;
    }
    report.entries.push_back(std::move(e));
  }

  const bool all_valid = std::all_of(report.entries.begin(), report.entries.end(), [](const auto& e) { return e.valid; });
  report.strictly_increasing = all_valid;
  for (std::size_t i = 1; all_valid && i < report.entries.size(); ++i) {
    if (!certainly_lt(report.entries[i - 1].ratio, report.entries[i].ratio)) report.strictly_increasing = false;
  }
  if (all_valid) {
    const auto& first = report.entries.front().ratio;
    const auto& last = report.entries.back().ratio;
    report.doubled = last.certainly_ge(2 * first.upper());
  }
  report.diverging = report.strictly_increasing && report.doubled;
  report.note = all_valid ? "finite-sweep proxy: strict increase and last/first >= 2"
                          : "some bundle has c' = 0, so f_k is undefined there";
  return report;
}

GuzmanReport guzman_instance_check(const RectangleFamily& family, const GridFunction& f, const DyadicRational& lambda,
                                   GuzmanMode mode, std::size_t kmax) {
  if (lambda.sign() <= 0) throw InvalidArgument("lambda must be positive");
  const std::size_t n = family.dim();
  if (n < 2) throw InvalidArgument("instance check needs dimension >= 2");
  GuzmanReport r;
  r.mode = mode;
  const std::string plane = "x" + std::to_string(n - 1) + "x" + std::to_string(n);
  if (mode == GuzmanMode::prop1) {
    const auto w = width(project(family, n - 2, n - 1)).width;
    r.hypotheses_met = true;
    r.hypothesis_detail = "projection onto the " + plane + " plane has width " + std::to_string(w);
  } else {
    const auto c = property_c_check(family, n - 2, n - 1, kmax);
    r.hypotheses_met = c.holds;
    r.hypothesis_detail = "property (C) on the " + plane + " plane needs k = " + std::to_string(c.required_k) +
                          (c.holds ? " <= " : " > ") + "kmax = " + std::to_string(kmax);
  }

  const auto d = static_cast<std::uint32_t>(n - 2);
  r.constant = Interval(Rational(10)) +
               Interval(pow2_rational(static_cast<long>(n) + 1)) * (Interval(Rational(2)) * Interval::ln2()).pow(d);
  r.level_measure = measure(superlevel(maximal_function(f, family), lambda, true));
  r.integral = orlicz_integral(f, OrliczFn::phi(d), 1 / lambda.to_rational()).value;
  r.rhs = r.constant * r.integral;
  r.holds = r.hypotheses_met && r.rhs.certainly_ge(r.level_measure.to_rational());
  return r;
}

}  // namespace rectlab
