#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rectlab/dyadic.hpp"
#include "rectlab/grid.hpp"
#include "rectlab/rectangle.hpp"

namespace rectlab {

/// Index tuple J = (j_1, ..., j_r), used for Y_J and the nested unions E_P.
using IndexTuple = std::vector<std::uint32_t>;

/// Quantities read off a bundle on its grid.
struct BundleMeasurements {
  DyadicRational theta_measure;
  DyadicRational y_measure;
  /// Minimum of the discrete maximal function of the Theta indicator over Y.
  DyadicRational min_maximal;
  std::size_t min_cell = 0;
  bool theta_in_y = false;
  /// |Y| / (2^{dk} k^d |Theta|); absent when k = 0.
  std::optional<Rational> c;
  /// 2^{dk} * min_maximal.
  DyadicRational c_prime;
};

/// A family together with sets Theta ⊆ Y meant to satisfy the three
/// sharpness hypotheses with exponent d and constants (c, c').
struct CounterexampleBundle {
  std::string construction;
  RectangleFamily family;
  GridSpec spec;
  GridSet theta;
  GridSet y;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  std::optional<std::uint32_t> p;
  Rational claimed_c;
  Rational claimed_c_prime = 1;
  std::string convention;
  BundleMeasurements measured;

  /// Rademacher bundles only: Y_J per nonincreasing J, and E_P for every
  /// prefix P (length 0 gives Y itself, length n-1 gives Y_J).
  std::map<IndexTuple, GridSet> y_parts;
  std::map<IndexTuple, GridSet> nested_unions;
};

/// Binomial coefficient, exact in 64 bits for the sizes used here.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

/// All nonincreasing tuples top >= j_1 >= ... >= j_len >= 0, lexicographic.
std::vector<IndexTuple> nonincreasing_tuples(std::uint32_t top, std::size_t len);

/// { [0,s_1] x ... x [0,s_{n-1}] x [0, alpha / (s_1...s_{n-1})] : s_i in {1, 1/2, ..., 2^-k} }.
/// alpha must be a power of two no larger than 2^{-(n-1)k}.
RectangleFamily hyperbolic_family(std::uint32_t n, std::uint32_t k, const DyadicRational& alpha,
                                  const Limits& limits = {});

/// Theta = ∩ family, Y = ∪ family for the hyperbolic family with alpha = 2^{-nk}.
/// The grid uses period 2^-k on the last axis, where every set and window lives.
CounterexampleBundle lemma1_bundle(std::uint32_t n, std::uint32_t k, const Limits& limits = {});

/// The intersections ∩_i R^i_{j_i} over nonincreasing index tuples, where
/// R^1_j = R_j and R^i_j takes its first i-1 sides from R_k and the rest from R_j.
RectangleFamily hat_family(const StrictChain& chain);

/// Chain with m^i_j = k + 1 - j on every axis; dim is n - 1 for a bundle in R^n.
StrictChain default_chain(std::size_t dim, std::uint32_t k);

/// Rademacher counterexample over hat_family(chain) x [0, 2^-p].
///
/// Theta multiplies r_{m^i_j}(x_i) over j = 0..k on every axis, with
/// m^n_j = p - j on the last one. Y is the union of the Y_J.
CounterexampleBundle rademacher_bundle(const StrictChain& chain, std::uint32_t p, const Limits& limits = {});

/// Product with [0,1] in a new last coordinate.
RectangleFamily cylinder_family(const RectangleFamily& family);
/// Theta x [0,1], Y x [0,1] over the cylinder family; d is kept.
CounterexampleBundle cylinder_bundle(const CounterexampleBundle& base);

struct SoriaCertificate {
  std::uint32_t j1 = 0;
  std::uint32_t j2 = 0;
  /// R^1_{j1} ∩ R^2_{j2} computed from the chain.
  DyadicRectangle intersection;
  /// [0, alpha_{j1}] x [0, beta_{2k-j2}] from the input family.
  DyadicRectangle closed_form;
  /// Intersection of the two input rectangles indexed j1 and 2k-j2.
  DyadicRectangle member_intersection;
};

struct SoriaReduction {
  StrictChain chain;
  std::vector<SoriaCertificate> certificates;
};

/// Turns 2k+1 pairwise incomparable planar rectangles into a strict chain of
/// length k+1 whose hat family is made of pairwise intersections of inputs.
SoriaReduction soria_chain(const RectangleFamily& incomparables);

/// Recomputes |Theta|, |Y|, min_Y M chi_Theta and the derived constants.
BundleMeasurements measure_bundle(const CounterexampleBundle& bundle, bool brute_force = false);

struct HypothesisCheck {
  bool contained = false;          // Theta ⊆ Y
  bool measure_bound = false;      // |Y| >= c 2^{dk} k^d |Theta|
  bool maximal_bound = false;      // min_Y M chi_Theta >= c' 2^{-dk}
  Rational required_y;
  Rational required_min;
};

/// Checks the three hypotheses against the bundle's claimed constants.
HypothesisCheck check_hypotheses(const CounterexampleBundle& bundle);

struct ClaimEEntry {
  IndexTuple prefix;
  DyadicRational union_measure;  // |E_P|
  DyadicRational half_sum;       // (1/2) sum_j |E_{P,j}|
  bool holds = false;
};

/// |E_P| >= (1/2) sum_{j <= last(P)} |E_{P,j}| for every prefix of length 0..n-2.
std::vector<ClaimEEntry> check_claim_e(const CounterexampleBundle& bundle);

}  // namespace rectlab
