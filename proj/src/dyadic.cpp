#include "rectlab/dyadic.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "rectlab/error.hpp"

namespace rectlab {

namespace {

std::strong_ordering to_ordering(int c) {
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

mpz_class parse_integer(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty integer");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw InvalidArgument("malformed integer: " + std::string(text));
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') throw InvalidArgument("malformed integer: " + std::string(text));
  }
  mpz_class out;
  out.set_str(std::string(text[0] == '+' ? text.substr(1) : text), 10);
  return out;
}

}  // namespace

DyadicRational::DyadicRational(long value) : numerator_(value), exponent_(0) {}

DyadicRational::DyadicRational(mpz_class numerator, std::uint32_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  canonicalize();
}

void DyadicRational::canonicalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  if (exponent_ == 0) return;
  const auto zeros = static_cast<std::uint32_t>(mpz_scan1(numerator_.get_mpz_t(), 0));
  const std::uint32_t drop = zeros < exponent_ ? zeros : exponent_;
  if (drop > 0) {
    mpz_fdiv_q_2exp(numerator_.get_mpz_t(), numerator_.get_mpz_t(), drop);
    exponent_ -= drop;
  }
}

DyadicRational DyadicRational::pow2(long power) {
  if (power >= 0) {
    mpz_class n = 1;
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(power));
    return DyadicRational(n, 0);
  }
  return DyadicRational(mpz_class(1), static_cast<std::uint32_t>(-power));
}

DyadicRational DyadicRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return DyadicRational(parse_integer(text), 0);
  const mpz_class num = parse_integer(text.substr(0, slash));
  std::string_view den = text.substr(slash + 1);
  if (den.starts_with("2^")) {
    den.remove_prefix(2);
    std::uint32_t e = 0;
    const auto [ptr, ec] = std::from_chars(den.data(), den.data() + den.size(), e);
    if (ec != std::errc() || ptr != den.data() + den.size()) {
      throw InvalidArgument("malformed dyadic exponent: " + std::string(text));
    }
    return DyadicRational(num, e);
  }
  return from_rational(Rational(num, parse_integer(den)));
}

DyadicRational DyadicRational::from_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  const mpz_class& den = c.get_den();
  if (den <= 0 || mpz_popcount(den.get_mpz_t()) != 1) {
    throw InvalidArgument("not a dyadic rational: " + c.get_str());
  }
  const auto e = static_cast<std::uint32_t>(mpz_scan1(den.get_mpz_t(), 0));
  return DyadicRational(c.get_num(), e);
}

bool DyadicRational::is_power_of_two() const {
  return sign() > 0 && mpz_popcount(numerator_.get_mpz_t()) == 1;
}

long DyadicRational::floor_log2() const {
  if (sign() <= 0) throw InvalidArgument("floor_log2 of a non-positive value");
  const long bits = static_cast<long>(mpz_sizeinbase(numerator_.get_mpz_t(), 2));
  return bits - 1 - static_cast<long>(exponent_);
}

Rational DyadicRational::to_rational() const {
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exponent_);
  Rational q(numerator_, den);
  q.canonicalize();
  return q;
}

double DyadicRational::to_double() const {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, numerator_.get_mpz_t());
  return std::ldexp(mant, static_cast<int>(exp - static_cast<long>(exponent_)));
}

std::string DyadicRational::to_string() const {
  return numerator_.get_str() + "/2^" + std::to_string(exponent_);
}

DyadicRational DyadicRational::abs() const {
  DyadicRational out = *this;
  out.numerator_ = ::abs(numerator_);
  return out;
}

DyadicRational DyadicRational::shifted(long power) const {
  if (is_zero()) return {};
  DyadicRational out = *this;
  if (power >= 0) {
    const auto up = static_cast<std::uint32_t>(power);
    if (up <= out.exponent_) {
      out.exponent_ -= up;
    } else {
      mpz_mul_2exp(out.numerator_.get_mpz_t(), out.numerator_.get_mpz_t(), up - out.exponent_);
      out.exponent_ = 0;
    }
  } else {
    out.exponent_ += static_cast<std::uint32_t>(-power);
  }
  out.canonicalize();
  return out;
}

DyadicRational DyadicRational::operator-() const {
  DyadicRational out = *this;
  out.numerator_ = -out.numerator_;
  return out;
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& rhs) {
  if (exponent_ >= rhs.exponent_) {
    mpz_class scaled = rhs.numerator_;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), exponent_ - rhs.exponent_);
    numerator_ += scaled;
  } else {
    mpz_mul_2exp(numerator_.get_mpz_t(), numerator_.get_mpz_t(), rhs.exponent_ - exponent_);
    numerator_ += rhs.numerator_;
    exponent_ = rhs.exponent_;
  }
  canonicalize();
  return *this;
}

DyadicRational& DyadicRational::operator-=(const DyadicRational& rhs) { return *this += -rhs; }

DyadicRational& DyadicRational::operator*=(const DyadicRational& rhs) {
  numerator_ *= rhs.numerator_;
  exponent_ += rhs.exponent_;
  canonicalize();
  return *this;
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  if (a.exponent_ == b.exponent_) return to_ordering(cmp(a.numerator_, b.numerator_));
  mpz_class lhs = a.numerator_;
  mpz_class rhs = b.numerator_;
  if (a.exponent_ < b.exponent_) {
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), b.exponent_ - a.exponent_);
  } else {
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), a.exponent_ - b.exponent_);
  }
  return to_ordering(cmp(lhs, rhs));
}

std::ostream& operator<<(std::ostream& os, const DyadicRational& value) { return os << value.to_string(); }

std::strong_ordering compare(const DyadicRational& a, const Rational& b) {
  return to_ordering(cmp(a.to_rational(), b));
}

}  // namespace rectlab
