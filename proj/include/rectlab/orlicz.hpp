#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rectlab/constructions.hpp"
#include "rectlab/grid.hpp"
#include "rectlab/interval.hpp"
#include "rectlab/rectangle.hpp"

namespace rectlab {

/// t^p (p >= 1) or Phi_d(t) = t (1 + log_+^d t), natural logarithm.
class OrliczFn {
 public:
  enum class Kind { power, phi };

  static OrliczFn power(std::uint32_t p);
  static OrliczFn phi(std::uint32_t d);
  /// "p:P" or "d:D".
  static OrliczFn parse(const std::string& text);

  Kind kind() const { return kind_; }
  std::uint32_t parameter() const { return parameter_; }
  std::string to_string() const;

  Interval operator()(const Rational& t) const;
  /// Exact value when no logarithm is involved (power, or t <= 1).
  std::optional<Rational> exact(const Rational& t) const;

  /// Phi = o(Phi_d) at infinity, decided from the kinds.
  bool is_little_o_of_phi(std::uint32_t d) const;

  friend bool operator==(const OrliczFn&, const OrliczFn&) = default;

 private:
  OrliczFn(Kind kind, std::uint32_t parameter) : kind_(kind), parameter_(parameter) {}
  Kind kind_ = Kind::power;
  std::uint32_t parameter_ = 1;
};

struct OrliczIntegral {
  Interval value;
  std::optional<Rational> exact;
};

/// Sum over cells of Phi(scale |f|) times the cell volume.
OrliczIntegral orlicz_integral(const GridFunction& f, const OrliczFn& phi, const Rational& scale = 1);

enum class Certainty { holds, fails, undecided };
std::string to_string(Certainty c);

struct WeakTypeReport {
  DyadicRational lambda;
  Rational C;
  DyadicRational level_measure;  // |{M f > lambda}|
  OrliczIntegral integral;       // ∫ Phi(C |f| / lambda)
  Interval ratio;                // level_measure / integral (0 when both vanish)
  /// level_measure <= integral, decided on the worst endpoint.
  Certainty verdict = Certainty::undecided;
};

WeakTypeReport weak_type_ratio(const RectangleFamily& family, const GridFunction& f, const DyadicRational& lambda,
                               const Rational& C, const OrliczFn& phi);

struct KappaReport {
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  HypothesisCheck hypotheses;
  bool hypotheses_met = false;
  /// Largest power of two not above the measured c'; f_k = 2^{dk} chi_Theta / c'_eff.
  std::optional<DyadicRational> c_prime_used;
  DyadicRational level_measure;  // |{M f_k >= 1}|
  Interval integral;             // ∫ Phi_d(f_k)
  Interval rhs;                  // c c'_eff / d^d * integral
  bool holds = false;
  std::size_t witness_cell = 0;
  std::string note;
};

/// Level set of M f_k against c c' / d^d ∫ Phi_d(f_k), using the claimed c and
/// the measured c'. Passes iff the hypotheses hold and lhs >= rhs.hi.
KappaReport kappa_check(const CounterexampleBundle& bundle);

struct SweepEntry {
  std::uint32_t k = 0;
  bool valid = false;
  Interval numerator;    // ∫ Phi_d(f_k)
  Interval denominator;  // ∫ Phi(C f_k)
  Interval ratio;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  bool strictly_increasing = false;
  bool doubled = false;
  bool diverging = false;
  std::string note;
};

/// ∫Phi_d(f_k) / ∫Phi(C f_k) per bundle. Diverging means strictly increasing
/// (certified: each lower end above the previous upper end) with last/first >= 2.
/// Throws InvalidArgument unless Phi = o(Phi_d).
SweepReport divergence_sweep(const std::vector<CounterexampleBundle>& bundles, const OrliczFn& phi,
                             const Rational& C);

enum class GuzmanMode { prop1, prop2 };

struct GuzmanReport {
  GuzmanMode mode = GuzmanMode::prop1;
  bool hypotheses_met = false;
  std::string hypothesis_detail;
  DyadicRational level_measure;  // |{M f > lambda}|
  Interval constant;             // 10 + 2^{n+1} ln^{n-2} 4
  Interval integral;             // ∫ Phi_{n-2}(|f| / lambda)
  Interval rhs;
  bool holds = false;
};

/// Single-instance check of |{M f > lambda}| <= (10 + 2^{n+1} ln^{n-2} 4) ∫ Phi_{n-2}(|f|/lambda).
GuzmanReport guzman_instance_check(const RectangleFamily& family, const GridFunction& f, const DyadicRational& lambda,
                                   GuzmanMode mode, std::size_t kmax = 8);

}  // namespace rectlab
