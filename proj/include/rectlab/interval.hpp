#pragma once

#include <cstdint>
#include <string>

#include <mpfr.h>

#include "rectlab/dyadic.hpp"

namespace rectlab {

inline constexpr mpfr_prec_t kIntervalPrecision = 128;

/// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds lo
/// down and hi up, so the exact result always lies inside.
class Interval {
 public:
  Interval();
  explicit Interval(const Rational& point);
  explicit Interval(const DyadicRational& point);
  Interval(const Rational& lo, const Rational& hi);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval other) noexcept;
  ~Interval();

  friend void swap(Interval& a, Interval& b) noexcept;

  /// Natural logarithm of 2 as an enclosure.
  static Interval ln2();

  /// Exact rational values of the endpoints.
  Rational lower() const;
  Rational upper() const;
  double lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  /// (hi - lo) / |lo|, rounded up; infinite when lo is zero and hi is not.
  double relative_width() const;
  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
  bool contains(const Rational& x) const;

  /// x <= every point of the interval.
  bool certainly_ge(const Rational& x) const { return mpfr_cmp_q(lo_, x.get_mpq_t()) >= 0; }
  /// x >= every point of the interval.
  bool certainly_le(const Rational& x) const { return mpfr_cmp_q(hi_, x.get_mpq_t()) <= 0; }
  /// Every point of a lies below every point of b.
  friend bool certainly_le(const Interval& a, const Interval& b) { return mpfr_lessequal_p(a.hi_, b.lo_) != 0; }
  friend bool certainly_lt(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi_, b.lo_) != 0; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Requires b not to contain zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  /// Requires lo > 0.
  Interval log() const;
  /// Requires lo >= 0.
  Interval pow(std::uint32_t e) const;

  /// "[lo, hi]" with lo printed rounded down and hi rounded up.
  std::string to_string(int digits = 20) const;
  std::string lower_string(int digits = 20) const;
  std::string upper_string(int digits = 20) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace rectlab
