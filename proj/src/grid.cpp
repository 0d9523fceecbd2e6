#include "rectlab/grid.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "rectlab/error.hpp"

namespace rectlab {

namespace {

mpz_class to_mpz(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class out(static_cast<unsigned long>(mag >> 64));
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 64);
  out += mpz_class(static_cast<unsigned long>(mag & ~std::uint64_t{0}));
  return negative ? mpz_class(-out) : out;
}

std::int64_t to_int64(const mpz_class& v) {
  if (!v.fits_slong_p()) throw OverflowError("value " + v.get_str() + " does not fit a 64-bit numerator");
  return v.get_si();
}

// Sign of a * 2^-ea - b * 2^-eb.
int compare_scaled(std::int64_t a, std::uint32_t ea, std::int64_t b, std::uint32_t eb) {
  auto sign = [](__int128 x) { return (x > 0) - (x < 0); };
  if (ea == eb) return sign(static_cast<__int128>(a) - b);
  // Bring both to the larger exponent by shifting the other numerator up.
  if (ea > eb) return -compare_scaled(b, eb, a, ea);
  const std::uint32_t diff = eb - ea;
  if (a == 0) return -sign(b);
  if (diff >= 63) return sign(a);  // |a| * 2^diff exceeds any int64
  return sign((static_cast<__int128>(a) << diff) - b);
}

}  // namespace

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("64-bit numerator overflow in addition");
  return out;
}

std::int64_t checked_shift(std::int64_t a, std::uint32_t bits) {
  if (a == 0 || bits == 0) return a;
  if (bits >= 63) throw OverflowError("64-bit numerator overflow in shift");
  const std::int64_t limit = std::numeric_limits<std::int64_t>::max() >> bits;
  if (a > limit || a < -limit) throw OverflowError("64-bit numerator overflow in shift");
  return a * (std::int64_t{1} << bits);
}

// ---------------------------------------------------------------------------
// GridSpec

GridSpec::GridSpec(std::vector<std::uint32_t> resolution, std::vector<std::uint32_t> period,
                   std::uint64_t max_cells)
    : resolution_(std::move(resolution)), period_(std::move(period)) {
  if (resolution_.empty()) throw InvalidArgument("grid dimension must be at least 1");
  if (period_.empty()) period_.assign(resolution_.size(), 0);
  if (period_.size() != resolution_.size()) throw DimensionMismatch("period and resolution lengths differ");
  shift_.assign(resolution_.size(), 0);
  std::uint64_t bits = 0;
  for (std::size_t i = resolution_.size(); i-- > 0;) {
    if (period_[i] > resolution_[i]) {
      throw InvalidArgument("period exponent " + std::to_string(period_[i]) + " exceeds resolution " +
                            std::to_string(resolution_[i]) + " on axis " + std::to_string(i));
    }
    shift_[i] = static_cast<std::uint32_t>(bits);
    bits += resolution_[i] - period_[i];
  }
  if (bits >= 62 || (std::uint64_t{1} << bits) > max_cells) {
    throw CapExceeded("grid needs 2^" + std::to_string(bits) + " cells, above the cap of " +
                      std::to_string(max_cells));
  }
  total_bits_ = static_cast<std::uint32_t>(bits);
}

bool GridSpec::is_unit_torus() const {
  return std::all_of(period_.begin(), period_.end(), [](auto t) { return t == 0; });
}

DyadicRational GridSpec::cell_volume() const {
  long total = 0;
  for (const auto q : resolution_) total += q;
  return DyadicRational::pow2(-total);
}

DyadicRational GridSpec::volume() const {
  long total = 0;
  for (const auto t : period_) total += t;
  return DyadicRational::pow2(-total);
}

GridSpec GridSpec::refined(std::span<const std::uint32_t> extra, std::uint64_t max_cells) const {
  if (extra.size() != dim()) throw DimensionMismatch("refinement vector has the wrong length");
  std::vector<std::uint32_t> q = resolution_;
  for (std::size_t i = 0; i < q.size(); ++i) q[i] += extra[i];
  return GridSpec(std::move(q), period_, max_cells);
}

GridSpec GridSpec::extended(std::uint32_t resolution, std::uint32_t period, std::uint64_t max_cells) const {
  auto q = resolution_;
  auto t = period_;
  q.push_back(resolution);
  t.push_back(period);
  return GridSpec(std::move(q), std::move(t), max_cells);
}

void require_same_spec(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw DimensionMismatch("operands live on different grids");
}

// ---------------------------------------------------------------------------
// GridSet

GridSet::GridSet(GridSpec spec, bool filled)
    : spec_(std::move(spec)), words_((spec_.cell_count() + 63) / 64, filled ? ~std::uint64_t{0} : 0) {
  clear_tail();
}

void GridSet::clear_tail() {
  const std::size_t used = size() & 63;
  if (used != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << used) - 1;
}

GridSet GridSet::from_axis_masks(GridSpec spec, const std::vector<std::vector<bool>>& masks) {
  if (masks.size() != spec.dim()) throw DimensionMismatch("one mask per axis is required");
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (masks[i].size() != spec.cells_on_axis(i)) throw DimensionMismatch("mask length differs from axis length");
  }
  GridSet out(std::move(spec));
  const GridSpec& s = out.spec_;
  const std::size_t n = s.dim();
  const std::size_t last = s.cells_on_axis(n - 1);
  std::vector<std::size_t> coord(n, 0);
  // Walk rows of the last (contiguous) axis.
  for (std::size_t base = 0; base < out.size(); base += last) {
    bool prefix_ok = true;
    for (std::size_t i = 0; i + 1 < n && prefix_ok; ++i) prefix_ok = masks[i][s.coordinate(base, i)];
    if (!prefix_ok) continue;
    for (std::size_t c = 0; c < last; ++c) {
      if (masks[n - 1][c]) out.set(base + c);
    }
  }
  return out;
}

void GridSet::set(std::size_t cell, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (cell & 63);
  if (value) {
    words_[cell >> 6] |= bit;
  } else {
    words_[cell >> 6] &= ~bit;
  }
}

std::size_t GridSet::count() const {
  std::size_t total = 0;
  for (const auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool GridSet::is_subset_of(const GridSet& other) const {
  require_same_spec(spec_, other.spec_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

std::size_t GridSet::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }
  return size();
}

GridSet& GridSet::operator&=(const GridSet& rhs) {
  require_same_spec(spec_, rhs.spec_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= rhs.words_[i];
  return *this;
}

GridSet& GridSet::operator|=(const GridSet& rhs) {
  require_same_spec(spec_, rhs.spec_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= rhs.words_[i];
  return *this;
}

GridSet GridSet::operator~() const {
  GridSet out = *this;
  for (auto& w : out.words_) w = ~w;
  out.clear_tail();
  return out;
}

std::vector<std::uint8_t> GridSet::to_bytes() const {
  std::vector<std::uint8_t> out((size() + 7) / 8, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
  }
  return out;
}

GridSet GridSet::from_bytes(GridSpec spec, std::span<const std::uint8_t> bytes) {
  GridSet out(std::move(spec));
  if (bytes.size() != (out.size() + 7) / 8) throw InvalidArgument("bitset length does not match the grid");
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    out.words_[i / 8] |= static_cast<std::uint64_t>(bytes[i]) << (8 * (i % 8));
  }
  const auto before = out.words_;
  out.clear_tail();
  if (before != out.words_) throw InvalidArgument("bitset has bits set past the last cell");
  return out;
}

GridSet GridSet::refined(const GridSpec& finer) const {
  if (finer.dim() != spec_.dim()) throw DimensionMismatch("refinement changes the dimension");
  std::vector<std::uint32_t> extra(spec_.dim());
  for (std::size_t i = 0; i < spec_.dim(); ++i) {
    if (finer.period_exponent(i) != spec_.period_exponent(i) || finer.resolution(i) < spec_.resolution(i)) {
      throw InvalidArgument("target grid is not a refinement");
    }
    extra[i] = finer.resolution(i) - spec_.resolution(i);
  }
  GridSet out(finer);
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    std::size_t coarse = 0;
    for (std::size_t i = 0; i < spec_.dim(); ++i) coarse += (finer.coordinate(cell, i) >> extra[i]) * spec_.stride(i);
    if (test(coarse)) out.set(cell);
  }
  return out;
}

GridSet GridSet::cylinder(const GridSpec& extended) const {
  if (extended.dim() != spec_.dim() + 1 || extended.cells_on_axis(spec_.dim()) != 1) {
    throw InvalidArgument("cylinder grid must append one single-cell axis");
  }
  for (std::size_t i = 0; i < spec_.dim(); ++i) {
    if (extended.resolution(i) != spec_.resolution(i) || extended.period_exponent(i) != spec_.period_exponent(i)) {
      throw InvalidArgument("cylinder grid must keep the base axes");
    }
  }
  GridSet out = *this;
  out.spec_ = extended;
  return out;
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction::GridFunction(GridSpec spec, std::vector<std::int64_t> numerators, std::uint32_t exponent)
    : spec_(std::move(spec)), numerators_(std::move(numerators)), exponent_(exponent) {
  if (numerators_.size() != spec_.cell_count()) throw DimensionMismatch("value count does not match the grid");
}

GridFunction GridFunction::constant(GridSpec spec, const DyadicRational& value) {
  const std::size_t n = spec.cell_count();
  return GridFunction(std::move(spec), std::vector<std::int64_t>(n, to_int64(value.numerator())), value.exponent());
}

GridFunction GridFunction::from_values(GridSpec spec, std::span<const DyadicRational> values) {
  if (values.size() != spec.cell_count()) throw DimensionMismatch("value count does not match the grid");
  std::uint32_t e = 0;
  for (const auto& v : values) e = std::max(e, v.exponent());
  std::vector<std::int64_t> nums(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    mpz_class scaled = values[i].numerator();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), e - values[i].exponent());
    nums[i] = to_int64(scaled);
  }
  return GridFunction(std::move(spec), std::move(nums), e);
}

GridFunction GridFunction::indicator(const GridSet& set, const DyadicRational& scale) {
  const std::int64_t on = to_int64(scale.numerator());
  std::vector<std::int64_t> nums(set.size(), 0);
  for (std::size_t i = 0; i < nums.size(); ++i) {
    if (set.test(i)) nums[i] = on;
  }
  return GridFunction(set.spec(), std::move(nums), scale.exponent());
}

DyadicRational GridFunction::value(std::size_t cell) const {
  return DyadicRational(mpz_class(static_cast<long>(numerators_[cell])), exponent_);
}

std::vector<DyadicRational> GridFunction::values() const {
  std::vector<DyadicRational> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(value(i));
  return out;
}

GridFunction GridFunction::abs() const {
  GridFunction out = *this;
  for (auto& v : out.numerators_) {
    if (v == std::numeric_limits<std::int64_t>::min()) throw OverflowError("64-bit numerator overflow in abs");
    v = v < 0 ? -v : v;
  }
  return out;
}

GridFunction GridFunction::scaled(const DyadicRational& factor) const {
  const std::int64_t mult = to_int64(factor.numerator());
  GridFunction out = *this;
  for (auto& v : out.numerators_) {
    if (__builtin_mul_overflow(v, mult, &v)) throw OverflowError("64-bit numerator overflow in scaling");
  }
  out.exponent_ += factor.exponent();
  return out.normalized();
}

GridFunction GridFunction::normalized() const {
  int common = 64;
  for (const auto v : numerators_) {
    if (v != 0) common = std::min(common, std::countr_zero(static_cast<std::uint64_t>(v)));
  }
  GridFunction out = *this;
  if (common == 64) {
    out.exponent_ = 0;
    return out;
  }
  const auto drop = std::min<std::uint32_t>(static_cast<std::uint32_t>(common), exponent_);
  if (drop == 0) return out;
  for (auto& v : out.numerators_) v /= (std::int64_t{1} << drop);
  out.exponent_ -= drop;
  return out;
}

GridFunction GridFunction::refined(const GridSpec& finer) const {
  if (finer.dim() != spec_.dim()) throw DimensionMismatch("refinement changes the dimension");
  std::vector<std::uint32_t> extra(spec_.dim());
  for (std::size_t i = 0; i < spec_.dim(); ++i) {
    if (finer.period_exponent(i) != spec_.period_exponent(i) || finer.resolution(i) < spec_.resolution(i)) {
      throw InvalidArgument("target grid is not a refinement");
    }
    extra[i] = finer.resolution(i) - spec_.resolution(i);
  }
  std::vector<std::int64_t> nums(finer.cell_count());
  for (std::size_t cell = 0; cell < nums.size(); ++cell) {
    std::size_t coarse = 0;
    for (std::size_t i = 0; i < spec_.dim(); ++i) coarse += (finer.coordinate(cell, i) >> extra[i]) * spec_.stride(i);
    nums[cell] = numerators_[coarse];
  }
  return GridFunction(finer, std::move(nums), exponent_);
}

DyadicRational GridFunction::max() const {
  return DyadicRational(mpz_class(static_cast<long>(*std::max_element(numerators_.begin(), numerators_.end()))),
                        exponent_);
}

DyadicRational GridFunction::min() const {
  return DyadicRational(mpz_class(static_cast<long>(*std::min_element(numerators_.begin(), numerators_.end()))),
                        exponent_);
}

std::size_t GridFunction::argmin_over(const GridSet& set) const {
  require_same_spec(spec_, set.spec());
  std::size_t best = size();
  for (std::size_t i = 0; i < size(); ++i) {
    if (set.test(i) && (best == size() || numerators_[i] < numerators_[best])) best = i;
  }
  if (best == size()) throw InvalidArgument("minimum over an empty set");
  return best;
}

DyadicRational GridFunction::min_over(const GridSet& set) const { return value(argmin_over(set)); }

bool GridFunction::pointwise_le(const GridFunction& other) const {
  require_same_spec(spec_, other.spec_);
  for (std::size_t i = 0; i < size(); ++i) {
    if (compare_scaled(numerators_[i], exponent_, other.numerators_[i], other.exponent_) > 0) return false;
  }
  return true;
}

bool operator==(const GridFunction& a, const GridFunction& b) {
  if (!(a.spec_ == b.spec_)) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (compare_scaled(a.numerators_[i], a.exponent_, b.numerators_[i], b.exponent_) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Free functions

DyadicRational measure(const GridSet& set) {
  return DyadicRational(static_cast<long>(set.count())) * set.spec().cell_volume();
}

DyadicRational integrate(const GridFunction& f) {
  __int128 sum = 0;
  for (const auto v : f.numerators()) sum += v;
  return DyadicRational(to_mpz(sum), f.exponent()) * f.spec().cell_volume();
}

GridSet superlevel(const GridFunction& f, const DyadicRational& lambda, bool strict) {
  // value > lambda  <=>  num > lambda * 2^e  <=>  num > floor(lambda * 2^e)
  // value >= lambda <=>  num >= ceil(lambda * 2^e)
  const DyadicRational t = lambda.shifted(static_cast<long>(f.exponent()));
  mpz_class bound;
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), t.exponent());
  if (strict) {
    mpz_fdiv_q(bound.get_mpz_t(), t.numerator().get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_cdiv_q(bound.get_mpz_t(), t.numerator().get_mpz_t(), den.get_mpz_t());
  }
  GridSet out(f.spec());
  const auto nums = f.numerators();
  if (!bound.fits_slong_p()) {
    // Every 64-bit numerator sits on one side of the bound.
    if (bound < 0) out = ~out;
    return out;
  }
  const std::int64_t b = bound.get_si();
  for (std::size_t i = 0; i < nums.size(); ++i) {
    if (strict ? nums[i] > b : nums[i] >= b) out.set(i);
  }
  return out;
}

GridSet rademacher_sample(std::uint32_t m, std::size_t axis, const GridSpec& spec) {
  if (axis >= spec.dim()) throw InvalidArgument("axis out of range");
  if (m == 0) throw InvalidArgument("Rademacher index starts at 1");
  if (m > spec.resolution(axis)) {
    throw ResolutionError("r_" + std::to_string(m) + " is not constant on cells of side 2^-" +
                          std::to_string(spec.resolution(axis)));
  }
  if (m <= spec.period_exponent(axis)) {
    throw ResolutionError("r_" + std::to_string(m) + " is not periodic on this torus");
  }
  std::vector<std::vector<bool>> masks;
  for (std::size_t i = 0; i < spec.dim(); ++i) masks.emplace_back(spec.cells_on_axis(i), true);
  const std::uint32_t bit = spec.resolution(axis) - m;
  auto& mask = masks[axis];
  for (std::size_t c = 0; c < mask.size(); ++c) mask[c] = ((c >> bit) & 1U) == 0;
  return GridSet::from_axis_masks(spec, masks);
}

GridSet rectangle_indicator(const DyadicRectangle& rect, const GridSpec& spec) {
  if (rect.dim() != spec.dim()) throw DimensionMismatch("rectangle and grid dimensions differ");
  std::vector<std::vector<bool>> masks;
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    const auto m = rect.exponent(i);
    if (m > spec.resolution(i)) {
      throw ResolutionError("rectangle " + rect.to_string() + " is finer than the grid on axis " + std::to_string(i));
    }
    if (m < spec.period_exponent(i)) {
      throw ResolutionError("rectangle " + rect.to_string() + " is longer than the torus period on axis " +
                            std::to_string(i));
    }
    std::vector<bool> mask(spec.cells_on_axis(i), false);
    std::fill_n(mask.begin(), std::size_t{1} << (spec.resolution(i) - m), true);
    masks.push_back(std::move(mask));
  }
  return GridSet::from_axis_masks(spec, masks);
}

}  // namespace rectlab
