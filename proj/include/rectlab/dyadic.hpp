#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rectlab {

using Rational = mpq_class;

/// Exact number of the form numerator / 2^exponent.
///
/// Always stored canonically: the exponent is the smallest natural number for
/// which the numerator is an integer, so the numerator is odd unless the
/// exponent is zero.
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(long value);  // NOLINT(google-explicit-constructor)
  DyadicRational(mpz_class numerator, std::uint32_t exponent);

  /// 2^power, power may be negative.
  static DyadicRational pow2(long power);

  /// Accepts "n", "n/2^e" and "n/d" with d a power of two.
  static DyadicRational parse(std::string_view text);

  /// Exact conversion; throws InvalidArgument when q's denominator is not a
  /// power of two.
  static DyadicRational from_rational(const Rational& q);

  const mpz_class& numerator() const { return numerator_; }
  std::uint32_t exponent() const { return exponent_; }

  int sign() const { return sgn(numerator_); }
  bool is_zero() const { return sign() == 0; }
  /// True iff the value is 2^j for some integer j.
  bool is_power_of_two() const;
  /// floor(log2(value)) for positive values.
  long floor_log2() const;

  Rational to_rational() const;
  double to_double() const;
  /// Canonical "n/2^e" text, "n/2^0" for integers.
  std::string to_string() const;

  DyadicRational abs() const;
  /// value * 2^power.
  DyadicRational shifted(long power) const;

  DyadicRational operator-() const;
  DyadicRational& operator+=(const DyadicRational& rhs);
  DyadicRational& operator-=(const DyadicRational& rhs);
  DyadicRational& operator*=(const DyadicRational& rhs);

  friend DyadicRational operator+(DyadicRational lhs, const DyadicRational& rhs) { return lhs += rhs; }
  friend DyadicRational operator-(DyadicRational lhs, const DyadicRational& rhs) { return lhs -= rhs; }
  friend DyadicRational operator*(DyadicRational lhs, const DyadicRational& rhs) { return lhs *= rhs; }

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

 private:
  void canonicalize();

  mpz_class numerator_{0};
  std::uint32_t exponent_ = 0;
};

std::ostream& operator<<(std::ostream& os, const DyadicRational& value);

/// Exact comparison between a dyadic value and an arbitrary rational.
std::strong_ordering compare(const DyadicRational& a, const Rational& b);

/// 2^power as a rational.
inline Rational pow2_rational(long power) { return DyadicRational::pow2(power).to_rational(); }

}  // namespace rectlab
