#include "rectlab/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "rectlab/error.hpp"
#include "rectlab/maximal.hpp"

namespace rectlab {

namespace {

std::uint64_t factorial(std::uint32_t n) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 2; i <= n; ++i) out *= i;
  return out;
}

// All tuples in [0, top]^len, lexicographic.
std::vector<IndexTuple> all_tuples(std::uint32_t top, std::size_t len) {
  std::vector<IndexTuple> out;
  IndexTuple t(len, 0);
  while (true) {
    out.push_back(t);
    std::size_t i = len;
    while (i > 0 && t[i - 1] == top) t[--i] = 0;
    if (i == 0) break;
    ++t[i - 1];
  }
  return out;
}

GridSet union_of(const RectangleFamily& family, const GridSpec& spec) {
  GridSet out(spec);
  for (const auto& r : family) out |= rectangle_indicator(r, spec);
  return out;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

std::vector<IndexTuple> nonincreasing_tuples(std::uint32_t top, std::size_t len) {
  std::vector<IndexTuple> out;
  for (auto& t : all_tuples(top, len)) {
    if (std::is_sorted(t.rbegin(), t.rend())) out.push_back(std::move(t));
  }
  return out;
}

RectangleFamily hyperbolic_family(std::uint32_t n, std::uint32_t k, const DyadicRational& alpha,
                                  const Limits& limits) {
  if (n == 0) throw InvalidArgument("dimension must be at least 1");
  if (!alpha.is_power_of_two()) {
    throw InvalidArgument("alpha = " + alpha.to_string() + " is not a power of two");
  }
  const long a = -alpha.floor_log2();
  if (a < static_cast<long>((n - 1) * k)) {
    throw InvalidArgument("alpha = " + alpha.to_string() + " forces a side longer than 1");
  }
  RectangleFamily family(n, "hyperbolic");
  for (const auto& js : all_tuples(k, n - 1)) {
    std::vector<std::uint32_t> exps(js.begin(), js.end());
    const long used = std::accumulate(js.begin(), js.end(), 0L);
    exps.push_back(static_cast<std::uint32_t>(a - used));
    family.insert(DyadicRectangle(std::move(exps), limits.max_exponent));
  }
  return family;
}

CounterexampleBundle lemma1_bundle(std::uint32_t n, std::uint32_t k, const Limits& limits) {
  if (n < 2) throw InvalidArgument("lemma1 bundles need dimension at least 2");
  CounterexampleBundle b;
  b.construction = "lemma1";
  b.n = n;
  b.k = k;
  b.d = n - 1;
  b.family = hyperbolic_family(n, k, DyadicRational::pow2(-static_cast<long>(n * k)), limits);
  b.family.set_label("lemma1");

  std::vector<std::uint32_t> q(n, k), t(n, 0);
  q[n - 1] = n * k;
  t[n - 1] = k;
  b.spec = GridSpec(std::move(q), std::move(t), limits.max_cells);

  DyadicRectangle core = b.family[0];
  for (const auto& r : b.family) core = core.intersect(r);
  b.theta = rectangle_indicator(core, b.spec);
  b.y = union_of(b.family, b.spec);
  b.claimed_c = Rational(1, 3) * pow2_rational(-static_cast<long>(n) + 2);
  b.claimed_c_prime = 1;
  b.convention = "Theta = intersection, Y = union of the hyperbolic family; last-axis period 2^-k";
  b.measured = measure_bundle(b);
  return b;
}

RectangleFamily hat_family(const StrictChain& chain) {
  const std::size_t n = chain.dim();
  const auto k = static_cast<std::uint32_t>(chain.top());
  const DyadicRectangle& top = chain[k];

  // R^i_j for i = 0..n-1 (0-based axes): first i sides from R_k, the rest from R_j.
  auto generator = [&](std::size_t i, std::uint32_t j) {
    std::vector<std::uint32_t> exps(n);
    for (std::size_t a = 0; a < n; ++a) exps[a] = a < i ? top.exponent(a) : chain[j].exponent(a);
    return DyadicRectangle(std::move(exps), ~std::uint32_t{0});
  };

  RectangleFamily family(n, "hat");
  for (const auto& js : nonincreasing_tuples(k, n)) {
    DyadicRectangle r = generator(0, js[0]);
    for (std::size_t i = 1; i < n; ++i) r = r.intersect(generator(i, js[i]));
    family.insert(std::move(r));
  }
  return family;
}

StrictChain default_chain(std::size_t dim, std::uint32_t k) {
  std::vector<DyadicRectangle> rects;
  for (std::uint32_t j = 0; j <= k; ++j) rects.emplace_back(std::vector<std::uint32_t>(dim, k + 1 - j));
  return StrictChain(std::move(rects));
}

CounterexampleBundle rademacher_bundle(const StrictChain& chain, std::uint32_t p, const Limits& limits) {
  const std::size_t base_dim = chain.dim();
  const std::size_t n = base_dim + 1;
  const auto k = static_cast<std::uint32_t>(chain.top());
  if (p < k + 1) throw InvalidArgument("p = " + std::to_string(p) + " must be at least k + 1 = " + std::to_string(k + 1));
  for (std::size_t i = 0; i < base_dim; ++i) {
    if (chain.exponent(i, k) == 0) throw InvalidArgument("chain exponents must be at least 1 (r_0 is undefined)");
  }

  // m^i_j: chain exponents on the base axes, p - j on the last one.
  auto digit = [&](std::size_t axis, std::uint32_t j) {
    return axis < base_dim ? chain.exponent(axis, j) : p - j;
  };

  CounterexampleBundle b;
  b.construction = "rademacher";
  b.n = static_cast<std::uint32_t>(n);
  b.k = k;
  b.d = b.n - 1;
  b.p = p;

  std::vector<std::uint32_t> q;
  for (std::size_t i = 0; i < n; ++i) q.push_back(digit(i, 0));
  b.spec = GridSpec(std::move(q), {}, limits.max_cells);

  b.family = RectangleFamily(n, "rademacher");
  for (const auto& r : hat_family(chain)) b.family.insert(r.extended(p));

  // Per-axis mask: every digit m^axis_mu with mu in [lo, hi] is zero.
  auto band = [&](std::size_t axis, std::uint32_t lo, std::uint32_t hi) {
    std::vector<bool> mask(b.spec.cells_on_axis(axis), true);
    const std::uint32_t q_axis = b.spec.resolution(axis);
    for (std::uint32_t mu = lo; mu <= hi; ++mu) {
      const std::uint32_t bit = q_axis - digit(axis, mu);
      for (std::size_t c = 0; c < mask.size(); ++c) {
        if ((c >> bit) & 1U) mask[c] = false;
      }
    }
    return mask;
  };

  std::vector<std::vector<bool>> theta_masks;
  for (std::size_t i = 0; i < n; ++i) theta_masks.push_back(band(i, 0, k));
  b.theta = GridSet::from_axis_masks(b.spec, theta_masks);

  b.y = GridSet(b.spec);
  for (const auto& J : nonincreasing_tuples(k, n - 1)) {
    // Bounds j_0 = k >= j_1 >= ... >= j_{n-1} >= j_n = 0; axis i uses [j_{i+1}, j_i].
    std::vector<std::uint32_t> bounds{k};
    bounds.insert(bounds.end(), J.begin(), J.end());
    bounds.push_back(0);
    std::vector<std::vector<bool>> masks;
    for (std::size_t i = 0; i < n; ++i) masks.push_back(band(i, bounds[i + 1], bounds[i]));
    GridSet part = GridSet::from_axis_masks(b.spec, masks);
    b.y |= part;
    for (std::size_t len = 0; len <= J.size(); ++len) {
      IndexTuple prefix(J.begin(), J.begin() + static_cast<std::ptrdiff_t>(len));
      auto [it, inserted] = b.nested_unions.try_emplace(prefix, b.spec);
      it->second |= part;
    }
    b.y_parts.emplace(J, std::move(part));
  }

  b.claimed_c = pow2_rational(4 - 2 * static_cast<long>(n)) / Rational(static_cast<long>(factorial(b.n - 1)));
  b.claimed_c_prime = 1;
  b.convention = "Rademacher products over j = 0..k on every axis; m^n_j = p - j";
  b.measured = measure_bundle(b);
  return b;
}

RectangleFamily cylinder_family(const RectangleFamily& family) {
  RectangleFamily out(family.dim() + 1, family.label().empty() ? "cylinder" : family.label() + "-cylinder");
  for (const auto& r : family) out.insert(r.extended(0));
  return out;
}

CounterexampleBundle cylinder_bundle(const CounterexampleBundle& base) {
  CounterexampleBundle b;
  b.construction = "cylinder";
  b.family = cylinder_family(base.family);
  b.spec = base.spec.extended(0, 0, ~std::uint64_t{0});
  b.theta = base.theta.cylinder(b.spec);
  b.y = base.y.cylinder(b.spec);
  b.n = base.n + 1;
  b.k = base.k;
  b.d = base.d;
  b.p = base.p;
  b.claimed_c = base.claimed_c;
  b.claimed_c_prime = base.claimed_c_prime;
  b.convention = "cylinder over " + base.construction + ": " + base.convention;
  b.measured = measure_bundle(b);
  return b;
}

SoriaReduction soria_chain(const RectangleFamily& incomparables) {
  if (incomparables.dim() != 2) throw InvalidArgument("the Soria reduction works on planar families");
  if (incomparables.size() % 2 == 0) throw InvalidArgument("the Soria reduction needs an odd number of rectangles");
  std::vector<DyadicRectangle> sorted = incomparables.rectangles();
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      if (comparable(sorted[a], sorted[b])) {
        throw InvalidArgument(sorted[a].to_string() + " and " + sorted[b].to_string() + " are comparable");
      }
    }
  }
  // alpha ascending means first-axis exponent descending; beta then descends.
  std::sort(sorted.begin(), sorted.end(),
            [](const DyadicRectangle& a, const DyadicRectangle& b) { return a.exponent(0) > b.exponent(0); });
  const auto k = static_cast<std::uint32_t>(sorted.size() / 2);

  std::vector<DyadicRectangle> links;
  for (std::uint32_t j = 0; j <= k; ++j) {
    links.emplace_back(std::vector<std::uint32_t>{sorted[j].exponent(0), sorted[2 * k - j].exponent(1)},
                       ~std::uint32_t{0});
  }
  SoriaReduction out{StrictChain(std::move(links)), {}};
  const StrictChain& chain = out.chain;
  for (std::uint32_t j1 = 0; j1 <= k; ++j1) {
    for (std::uint32_t j2 = 0; j2 <= j1; ++j2) {
      const DyadicRectangle second({chain[k].exponent(0), chain[j2].exponent(1)}, ~std::uint32_t{0});
      out.certificates.push_back(SoriaCertificate{
          j1, j2, chain[j1].intersect(second),
          DyadicRectangle({sorted[j1].exponent(0), sorted[2 * k - j2].exponent(1)}, ~std::uint32_t{0}),
          sorted[j1].intersect(sorted[2 * k - j2])});
    }
  }
  return out;
}

BundleMeasurements measure_bundle(const CounterexampleBundle& bundle, bool brute_force) {
  BundleMeasurements m;
  m.theta_measure = measure(bundle.theta);
  m.y_measure = measure(bundle.y);
  m.theta_in_y = bundle.theta.is_subset_of(bundle.y);
  const GridFunction indicator = GridFunction::indicator(bundle.theta);
  const GridFunction maximal = brute_force ? maximal_function_bruteforce(indicator, bundle.family)
                                           : maximal_function(indicator, bundle.family);
  m.min_cell = maximal.argmin_over(bundle.y);
  m.min_maximal = maximal.value(m.min_cell);
  const long dk = static_cast<long>(bundle.d) * bundle.k;
  m.c_prime = m.min_maximal.shifted(dk);
  if (bundle.k > 0 && !m.theta_measure.is_zero()) {
    mpz_class kd;
    mpz_ui_pow_ui(kd.get_mpz_t(), bundle.k, bundle.d);
    m.c = m.y_measure.to_rational() / (pow2_rational(dk) * Rational(kd) * m.theta_measure.to_rational());
  }
  return m;
}

HypothesisCheck check_hypotheses(const CounterexampleBundle& bundle) {
  const BundleMeasurements& m = bundle.measured;
  const long dk = static_cast<long>(bundle.d) * bundle.k;
  mpz_class kd;
  mpz_ui_pow_ui(kd.get_mpz_t(), bundle.k, bundle.d);
  HypothesisCheck h;
  h.contained = m.theta_in_y;
  h.required_y = bundle.claimed_c * pow2_rational(dk) * Rational(kd) * m.theta_measure.to_rational();
  h.measure_bound = compare(m.y_measure, h.required_y) >= 0;
  h.required_min = bundle.claimed_c_prime * pow2_rational(-dk);
  h.maximal_bound = compare(m.min_maximal, h.required_min) >= 0;
  return h;
}

std::vector<ClaimEEntry> check_claim_e(const CounterexampleBundle& bundle) {
  if (bundle.nested_unions.empty()) throw InvalidArgument("bundle carries no nested unions");
  std::vector<ClaimEEntry> out;
  for (const auto& [prefix, set] : bundle.nested_unions) {
    if (prefix.size() + 2 > bundle.n) continue;
    const std::uint32_t top = prefix.empty() ? bundle.k : prefix.back();
    DyadicRational sum;
    for (std::uint32_t j = 0; j <= top; ++j) {
      IndexTuple child = prefix;
      child.push_back(j);
      sum += measure(bundle.nested_unions.at(child));
    }
    ClaimEEntry e{prefix, measure(set), sum.shifted(-1), false};
    e.holds = e.union_measure >= e.half_sum;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace rectlab
