#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rectlab/dyadic.hpp"
#include "rectlab/rectangle.hpp"

namespace rectlab {

/// Discretization of the torus T = prod_i R / (2^-t_i Z) into cells of side
/// 2^-q_i. Axis i holds 2^(q_i - t_i) half-open cells [c 2^-q_i, (c+1) 2^-q_i).
/// The period exponents t_i default to zero, i.e. the unit torus [0,1)^n.
///
/// Cells are numbered row-major: axis 0 varies slowest.
class GridSpec {
 public:
  GridSpec() = default;
  explicit GridSpec(std::vector<std::uint32_t> resolution, std::vector<std::uint32_t> period = {},
                    std::uint64_t max_cells = kDefaultMaxCells);

  std::size_t dim() const { return resolution_.size(); }
  std::uint32_t resolution(std::size_t axis) const { return resolution_[axis]; }
  std::uint32_t period_exponent(std::size_t axis) const { return period_[axis]; }
  const std::vector<std::uint32_t>& resolutions() const { return resolution_; }
  const std::vector<std::uint32_t>& periods() const { return period_; }
  bool is_unit_torus() const;

  /// log2 of the number of cells along an axis.
  std::uint32_t axis_bits(std::size_t axis) const { return resolution_[axis] - period_[axis]; }
  std::size_t cells_on_axis(std::size_t axis) const { return std::size_t{1} << axis_bits(axis); }
  std::size_t stride(std::size_t axis) const { return std::size_t{1} << shift_[axis]; }
  std::size_t cell_count() const { return std::size_t{1} << total_bits_; }

  /// Coordinate of a cell along one axis.
  std::size_t coordinate(std::size_t cell, std::size_t axis) const {
    return (cell >> shift_[axis]) & (cells_on_axis(axis) - 1);
  }

  DyadicRational cell_volume() const;
  /// Measure of one fundamental domain of the torus.
  DyadicRational volume() const;

  /// Same torus, each resolution raised by extra[i].
  GridSpec refined(std::span<const std::uint32_t> extra, std::uint64_t max_cells = kDefaultMaxCells) const;
  /// Adds a trailing axis.
  GridSpec extended(std::uint32_t resolution, std::uint32_t period = 0,
                    std::uint64_t max_cells = kDefaultMaxCells) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.resolution_ == b.resolution_ && a.period_ == b.period_;
  }

 private:
  std::vector<std::uint32_t> resolution_;
  std::vector<std::uint32_t> period_;
  std::vector<std::uint32_t> shift_;
  std::uint32_t total_bits_ = 0;
};

void require_same_spec(const GridSpec& a, const GridSpec& b);

/// Dense bitset of cells.
class GridSet {
 public:
  GridSet() = default;
  explicit GridSet(GridSpec spec, bool filled = false);

  /// Cells whose coordinate on every axis i is flagged in masks[i].
  static GridSet from_axis_masks(GridSpec spec, const std::vector<std::vector<bool>>& masks);

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return spec_.cell_count(); }

  bool test(std::size_t cell) const { return (words_[cell >> 6] >> (cell & 63)) & 1U; }
  void set(std::size_t cell, bool value = true);

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool is_subset_of(const GridSet& other) const;

  /// First member cell, or size() when empty.
  std::size_t first() const;

  GridSet& operator&=(const GridSet& rhs);
  GridSet& operator|=(const GridSet& rhs);
  GridSet operator~() const;
  friend GridSet operator&(GridSet a, const GridSet& b) { return a &= b; }
  friend GridSet operator|(GridSet a, const GridSet& b) { return a |= b; }
  friend bool operator==(const GridSet& a, const GridSet& b) { return a.spec_ == b.spec_ && a.words_ == b.words_; }

  /// Packed little-endian bytes: cell i is bit (i % 8) of byte i / 8.
  std::vector<std::uint8_t> to_bytes() const;
  static GridSet from_bytes(GridSpec spec, std::span<const std::uint8_t> bytes);

  /// Same set viewed on a grid with the same torus and finer cells.
  GridSet refined(const GridSpec& finer) const;
  /// Same bits on the grid with one extra single-cell axis (A x [0,1)).
  GridSet cylinder(const GridSpec& extended) const;

 private:
  void clear_tail();

  GridSpec spec_;
  std::vector<std::uint64_t> words_;
};

/// Cell-wise constant function with exact dyadic values num_c / 2^e sharing a
/// common exponent e. Numerators are 64-bit; arithmetic that would overflow
/// them throws OverflowError instead of wrapping.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(GridSpec spec, std::vector<std::int64_t> numerators, std::uint32_t exponent);

  static GridFunction constant(GridSpec spec, const DyadicRational& value);
  static GridFunction from_values(GridSpec spec, std::span<const DyadicRational> values);
  /// scale * indicator(set).
  static GridFunction indicator(const GridSet& set, const DyadicRational& scale = DyadicRational(1));

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return numerators_.size(); }
  std::uint32_t exponent() const { return exponent_; }
  std::span<const std::int64_t> numerators() const { return numerators_; }
  std::int64_t numerator(std::size_t cell) const { return numerators_[cell]; }
  DyadicRational value(std::size_t cell) const;
  std::vector<DyadicRational> values() const;

  GridFunction abs() const;
  GridFunction scaled(const DyadicRational& factor) const;
  /// Smallest common exponent representing the same values.
  GridFunction normalized() const;
  GridFunction refined(const GridSpec& finer) const;

  DyadicRational max() const;
  DyadicRational min() const;
  /// Minimum over the cells of a set; throws on an empty set.
  DyadicRational min_over(const GridSet& set) const;
  std::size_t argmin_over(const GridSet& set) const;

  /// Pointwise comparison by value.
  bool pointwise_le(const GridFunction& other) const;

  /// Equality of values (not of representation).
  friend bool operator==(const GridFunction& a, const GridFunction& b);

 private:
  GridSpec spec_;
  std::vector<std::int64_t> numerators_;
  std::uint32_t exponent_ = 0;
};

DyadicRational measure(const GridSet& set);
DyadicRational integrate(const GridFunction& f);

/// Cells with value > lambda (strict) or >= lambda (non-strict).
GridSet superlevel(const GridFunction& f, const DyadicRational& lambda, bool strict);

/// r_m on one axis: cells whose left endpoint has m-th binary digit 0.
/// Requires period_exponent(axis) < m <= resolution(axis).
GridSet rademacher_sample(std::uint32_t m, std::size_t axis, const GridSpec& spec);

/// Indicator of prod_i [0, 2^-m_i); requires period_exponent(i) <= m_i <= resolution(i).
GridSet rectangle_indicator(const DyadicRectangle& rect, const GridSpec& spec);

/// Overflow-checked helpers shared by the numeric kernels.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_shift(std::int64_t a, std::uint32_t bits);

}  // namespace rectlab
