#include "rectlab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "rectlab/error.hpp"

namespace rectlab {

namespace {

std::string format(const mpfr_t x, int digits, mpfr_rnd_t rnd) {
  char* buf = nullptr;
  const std::string spec = "%." + std::to_string(digits) + "R" + (rnd == MPFR_RNDD ? "D" : "U") + "g";
  if (mpfr_asprintf(&buf, spec.c_str(), x) < 0) throw Error("mpfr formatting failed");
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Rational endpoint(const mpfr_t x) {
  if (!mpfr_number_p(x)) throw OverflowError("interval endpoint is not finite");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

}  // namespace

Interval::Interval() {
  mpfr_init2(lo_, kIntervalPrecision);
  mpfr_init2(hi_, kIntervalPrecision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& point) : Interval(point, point) {}

Interval::Interval(const DyadicRational& point) : Interval(point.to_rational()) {}

Interval::Interval(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw InvalidArgument("interval with lo > hi");
  mpfr_init2(lo_, kIntervalPrecision);
  mpfr_init2(hi_, kIntervalPrecision);
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, kIntervalPrecision);
  mpfr_init2(hi_, kIntervalPrecision);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval() { swap(*this, other); }

Interval& Interval::operator=(Interval other) noexcept {
  swap(*this, other);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void swap(Interval& a, Interval& b) noexcept {
  mpfr_swap(a.lo_, b.lo_);
  mpfr_swap(a.hi_, b.hi_);
}

Interval Interval::ln2() {
  Interval r;
  mpfr_const_log2(r.lo_, MPFR_RNDD);
  mpfr_const_log2(r.hi_, MPFR_RNDU);
  return r;
}

Rational Interval::lower() const { return endpoint(lo_); }
Rational Interval::upper() const { return endpoint(hi_); }

double Interval::relative_width() const {
  if (mpfr_zero_p(lo_)) return mpfr_zero_p(hi_) ? 0.0 : std::numeric_limits<double>::infinity();
  mpfr_t w;
  mpfr_init2(w, kIntervalPrecision);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  mpfr_div(w, w, lo_, MPFR_RNDU);
  const double out = std::abs(mpfr_get_d(w, MPFR_RNDU));
  mpfr_clear(w);
  return out;
}

bool Interval::contains(const Rational& x) const {
  return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  // Endpoint products, each rounded both ways; take the extremes.
  Interval r;
  mpfr_t t;
  mpfr_init2(t, kIntervalPrecision);
  bool first = true;
  for (const auto* x : {&a.lo_, &a.hi_}) {
    for (const auto* y : {&b.lo_, &b.hi_}) {
      mpfr_mul(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw InvalidArgument("interval division by a range containing 0");
  Interval r;
  mpfr_t t;
  mpfr_init2(t, kIntervalPrecision);
  bool first = true;
  for (const auto* x : {&a.lo_, &a.hi_}) {
    for (const auto* y : {&b.lo_, &b.hi_}) {
      mpfr_div(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw InvalidArgument("log of an interval reaching 0");
  Interval r;
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(std::uint32_t e) const {
  if (mpfr_sgn(lo_) < 0) throw InvalidArgument("pow of an interval with a negative part");
  Interval r;
  mpfr_pow_ui(r.lo_, lo_, e, MPFR_RNDD);
  mpfr_pow_ui(r.hi_, hi_, e, MPFR_RNDU);
  return r;
}

std::string Interval::lower_string(int digits) const { return format(lo_, digits, MPFR_RNDD); }
std::string Interval::upper_string(int digits) const { return format(hi_, digits, MPFR_RNDU); }

std::string Interval::to_string(int digits) const {
  return "[" + lower_string(digits) + ", " + upper_string(digits) + "]";
}

}  // namespace rectlab
