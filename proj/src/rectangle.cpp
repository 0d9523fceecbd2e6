#include "rectlab/rectangle.hpp"

#include <algorithm>
#include <numeric>

#include "rectlab/error.hpp"

namespace rectlab {

namespace {

void check_dims(const DyadicRectangle& r, const DyadicRectangle& s) {
  if (r.dim() != s.dim()) {
    throw DimensionMismatch("rectangles of dimension " + std::to_string(r.dim()) + " and " +
                            std::to_string(s.dim()));
  }
}

}  // namespace

DyadicRectangle::DyadicRectangle(std::vector<std::uint32_t> exponents, std::uint32_t max_exponent)
    : exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw InvalidArgument("rectangle dimension must be at least 1");
  for (const auto m : exponents_) {
    if (m > max_exponent) {
      throw CapExceeded("exponent " + std::to_string(m) + " exceeds the cap " + std::to_string(max_exponent));
    }
  }
}

std::uint64_t DyadicRectangle::exponent_sum() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), std::uint64_t{0});
}

DyadicRational DyadicRectangle::measure() const { return DyadicRational::pow2(-static_cast<long>(exponent_sum())); }

DyadicRational DyadicRectangle::side(std::size_t axis) const {
  return DyadicRational::pow2(-static_cast<long>(exponent(axis)));
}

DyadicRectangle DyadicRectangle::intersect(const DyadicRectangle& other) const {
  check_dims(*this, other);
  DyadicRectangle out = *this;
  for (std::size_t i = 0; i < dim(); ++i) out.exponents_[i] = std::max(exponents_[i], other.exponents_[i]);
  return out;
}

DyadicRectangle DyadicRectangle::extended(std::uint32_t exponent) const {
  DyadicRectangle out = *this;
  out.exponents_.push_back(exponent);
  return out;
}

DyadicRectangle DyadicRectangle::projected(std::span<const std::size_t> axes) const {
  if (axes.empty()) throw InvalidArgument("projection onto zero axes");
  std::vector<std::uint32_t> kept;
  kept.reserve(axes.size());
  for (const auto axis : axes) {
    if (axis >= dim()) throw InvalidArgument("projection axis " + std::to_string(axis) + " out of range");
    kept.push_back(exponents_[axis]);
  }
  return DyadicRectangle(std::move(kept), ~std::uint32_t{0});
}

bool DyadicRectangle::contains(const DyadicRectangle& other) const {
  check_dims(*this, other);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (other.exponents_[i] < exponents_[i]) return false;
  }
  return true;
}

std::string DyadicRectangle::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(exponents_[i]);
  }
  return out + ")";
}

const char* to_string(Relation relation) {
  switch (relation) {
    case Relation::equal: return "equal";
    case Relation::subset: return "subset";
    case Relation::superset: return "superset";
    case Relation::strict_subset: return "strict_subset";
    case Relation::strict_superset: return "strict_superset";
    case Relation::incomparable: return "incomparable";
  }
  return "?";
}

Relation compare(const DyadicRectangle& r, const DyadicRectangle& s) {
  check_dims(r, s);
  bool below = true, above = true;          // r >= s resp. r <= s componentwise in exponents
  bool strict_below = true, strict_above = true;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    const auto a = r.exponent(i), b = s.exponent(i);
    below = below && a >= b;
    above = above && a <= b;
    strict_below = strict_below && a > b;
    strict_above = strict_above && a < b;
  }
  if (below && above) return Relation::equal;
  if (below) return strict_below ? Relation::strict_subset : Relation::subset;
  if (above) return strict_above ? Relation::strict_superset : Relation::superset;
  return Relation::incomparable;
}

bool comparable(const DyadicRectangle& r, const DyadicRectangle& s) {
  return compare(r, s) != Relation::incomparable;
}

bool strictly_nested(const DyadicRectangle& r, const DyadicRectangle& s) {
  return compare(r, s) == Relation::strict_subset;
}

DyadicRational rectangle_measure(const DyadicRectangle& r) { return r.measure(); }

DyadicRectangle dyadic_cover(std::span<const Rational> sides, std::uint32_t max_exponent) {
  std::vector<std::uint32_t> exps;
  exps.reserve(sides.size());
  for (const auto& side : sides) {
    if (sgn(side) <= 0 || side > 1) throw InvalidArgument("side " + side.get_str() + " is outside (0,1]");
    // Largest m with 2^-m >= p/q, i.e. p * 2^m <= q.
    const mpz_class& p = side.get_num();
    const mpz_class& q = side.get_den();
    long m = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2));
    m = std::max(m, 0L);
    auto fits = [&](long e) {
      mpz_class lhs = p;
      mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
      return lhs <= q;
    };
    while (!fits(m)) --m;
    while (fits(m + 1)) ++m;
    if (static_cast<std::uint64_t>(m) > max_exponent) {
      throw CapExceeded("cover exponent " + std::to_string(m) + " exceeds the cap " + std::to_string(max_exponent));
    }
    exps.push_back(static_cast<std::uint32_t>(m));
  }
  return DyadicRectangle(std::move(exps), max_exponent);
}

RectangleFamily::RectangleFamily(std::size_t dim, std::string label) : dim_(dim), label_(std::move(label)) {
  if (dim_ == 0) throw InvalidArgument("family dimension must be at least 1");
}

RectangleFamily::RectangleFamily(std::size_t dim, std::vector<DyadicRectangle> rects, std::string label)
    : RectangleFamily(dim, std::move(label)) {
  for (auto& r : rects) insert(std::move(r));
}

bool RectangleFamily::insert(DyadicRectangle rect) {
  if (rect.dim() != dim_) {
    throw DimensionMismatch("rectangle " + rect.to_string() + " does not have dimension " + std::to_string(dim_));
  }
  if (!index_.insert(rect).second) return false;
  rects_.push_back(std::move(rect));
  return true;
}

std::vector<std::uint32_t> RectangleFamily::max_exponents() const {
  std::vector<std::uint32_t> out(dim_, 0);
  for (const auto& r : rects_) {
    for (std::size_t i = 0; i < dim_; ++i) out[i] = std::max(out[i], r.exponent(i));
  }
  return out;
}

std::vector<std::uint32_t> RectangleFamily::min_exponents() const {
  if (rects_.empty()) return std::vector<std::uint32_t>(dim_, 0);
  std::vector<std::uint32_t> out(rects_.front().exponents().begin(), rects_.front().exponents().end());
  for (const auto& r : rects_) {
    for (std::size_t i = 0; i < dim_; ++i) out[i] = std::min(out[i], r.exponent(i));
  }
  return out;
}

StrictChain::StrictChain(std::vector<DyadicRectangle> rects) : rects_(std::move(rects)) {
  if (rects_.empty()) throw InvalidArgument("a strict chain needs at least one rectangle");
  for (std::size_t j = 1; j < rects_.size(); ++j) {
    if (!strictly_nested(rects_[j - 1], rects_[j])) {
      throw InvalidArgument("not a strict chain: " + rects_[j - 1].to_string() + " is not strictly inside " +
                            rects_[j].to_string());
    }
  }
}

RectangleFamily StrictChain::as_family() const { return RectangleFamily(dim(), rects_); }

}  // namespace rectlab
