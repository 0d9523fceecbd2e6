#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rectlab/dyadic.hpp"

namespace rectlab {

inline constexpr std::uint32_t kDefaultMaxExponent = 30;
inline constexpr std::uint64_t kDefaultMaxCells = std::uint64_t{1} << 24;

/// Resource guards shared by builders and loaders.
struct Limits {
  std::uint32_t max_exponent = kDefaultMaxExponent;
  std::uint64_t max_cells = kDefaultMaxCells;
};

/// The anchored box [0,2^-m_1] x ... x [0,2^-m_n], stored as (m_1, ..., m_n).
class DyadicRectangle {
 public:
  explicit DyadicRectangle(std::vector<std::uint32_t> exponents,
                           std::uint32_t max_exponent = kDefaultMaxExponent);

  std::size_t dim() const { return exponents_.size(); }
  std::span<const std::uint32_t> exponents() const { return exponents_; }
  std::uint32_t exponent(std::size_t axis) const { return exponents_.at(axis); }
  std::uint64_t exponent_sum() const;

  DyadicRational measure() const;
  DyadicRational side(std::size_t axis) const;

  /// Anchored boxes are closed under intersection: componentwise max exponent.
  DyadicRectangle intersect(const DyadicRectangle& other) const;
  /// Appends an axis with the given exponent.
  DyadicRectangle extended(std::uint32_t exponent) const;
  /// Keeps only the listed axes, in the listed order.
  DyadicRectangle projected(std::span<const std::size_t> axes) const;

  /// True iff other is a subset of *this.
  bool contains(const DyadicRectangle& other) const;

  std::string to_string() const;

  friend auto operator<=>(const DyadicRectangle&, const DyadicRectangle&) = default;

 private:
  std::vector<std::uint32_t> exponents_;
};

enum class Relation { equal, subset, superset, strict_subset, strict_superset, incomparable };

const char* to_string(Relation relation);

/// Inclusion relation of r with respect to s.
Relation compare(const DyadicRectangle& r, const DyadicRectangle& s);

/// r and s are nested one way or the other.
bool comparable(const DyadicRectangle& r, const DyadicRectangle& s);

/// r ≺ s: every side of r is strictly shorter than the matching side of s.
bool strictly_nested(const DyadicRectangle& r, const DyadicRectangle& s);

DyadicRational rectangle_measure(const DyadicRectangle& r);

/// Smallest-measure standard dyadic rectangle containing [0,s_1] x ... x [0,s_n].
DyadicRectangle dyadic_cover(std::span<const Rational> sides,
                             std::uint32_t max_exponent = kDefaultMaxExponent);

/// Finite set of same-dimension dyadic rectangles. Keeps first-insertion order
/// and silently drops duplicates.
class RectangleFamily {
 public:
  RectangleFamily() = default;
  explicit RectangleFamily(std::size_t dim, std::string label = {});
  RectangleFamily(std::size_t dim, std::vector<DyadicRectangle> rects, std::string label = {});

  /// Returns false when the rectangle was already present.
  bool insert(DyadicRectangle rect);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rects_.size(); }
  bool empty() const { return rects_.empty(); }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  const DyadicRectangle& operator[](std::size_t i) const { return rects_[i]; }
  auto begin() const { return rects_.begin(); }
  auto end() const { return rects_.end(); }
  const std::vector<DyadicRectangle>& rectangles() const { return rects_; }

  bool contains(const DyadicRectangle& rect) const { return index_.contains(rect); }

  /// Per-axis maximum exponent (the finest side on each axis).
  std::vector<std::uint32_t> max_exponents() const;
  /// Per-axis minimum exponent (the coarsest side on each axis).
  std::vector<std::uint32_t> min_exponents() const;

 private:
  std::size_t dim_ = 0;
  std::vector<DyadicRectangle> rects_;
  std::set<DyadicRectangle> index_;
  std::string label_;
};

/// R_0 ≺ R_1 ≺ ... ≺ R_k, validated on construction.
class StrictChain {
 public:
  explicit StrictChain(std::vector<DyadicRectangle> rects);

  std::size_t dim() const { return rects_.front().dim(); }
  std::size_t size() const { return rects_.size(); }
  /// k, where the chain is R_0, ..., R_k.
  std::size_t top() const { return rects_.size() - 1; }
  const DyadicRectangle& operator[](std::size_t j) const { return rects_[j]; }
  auto begin() const { return rects_.begin(); }
  auto end() const { return rects_.end(); }
  const std::vector<DyadicRectangle>& rectangles() const { return rects_; }

  /// m^axis_j, strictly decreasing in j.
  std::uint32_t exponent(std::size_t axis, std::size_t j) const { return rects_[j].exponent(axis); }

  RectangleFamily as_family() const;

 private:
  std::vector<DyadicRectangle> rects_;
};

}  // namespace rectlab
