#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "subrank/field.hpp"

namespace subrank {

/// Default truncation order for series computations.
inline constexpr std::int64_t kDefaultPrecision = 32;

/// A truncated Laurent series  sum_i c_i t^(val + i)  over a Field.
///
/// Inexact series know their coefficients below the truncation order N only
/// (the tail is O(t^N)). Exact series are Laurent polynomials. Values are kept
/// normalized: the first stored coefficient is nonzero, trailing zeros are
/// dropped, and a series with no stored coefficients is either the exact zero
/// or zero-to-precision O(t^N).
class LaurentSeries {
 public:
  /// Exact zero over Q.
  LaurentSeries() : LaurentSeries(Field::rationals()) {}
  /// Exact zero.
  explicit LaurentSeries(Field field);

  static LaurentSeries zero(const Field& field) { return LaurentSeries(field); }
  /// O(t^order).
  static LaurentSeries zero_to_precision(const Field& field, std::int64_t order);
  /// c t^exponent, exact.
  static LaurentSeries monomial(const Field& field, const Scalar& c, std::int64_t exponent);
  static LaurentSeries constant(const Field& field, const Scalar& c) { return monomial(field, c, 0); }
  /// Exact Laurent polynomial sum_i coeffs[i] t^(val + i).
  static LaurentSeries polynomial(const Field& field, std::int64_t val, std::vector<Scalar> coeffs);
  /// sum_i coeffs[i] t^(val + i) + O(t^order); coefficients at or beyond `order` are dropped.
  static LaurentSeries truncated(const Field& field, std::int64_t val, std::vector<Scalar> coeffs,
                                 std::int64_t order);

  const Field& field() const { return field_; }
  bool is_exact() const { return exact_; }
  /// Exact zero.
  bool is_zero() const { return exact_ && coeffs_.empty(); }
  /// Inexact with no known nonzero coefficient.
  bool is_zero_to_precision() const { return !exact_ && coeffs_.empty(); }
  /// Nonzero leading coefficient is known.
  bool has_certified_valuation() const { return !coeffs_.empty(); }

  /// Exponent of the first stored coefficient (meaningful when has_certified_valuation()).
  std::int64_t offset() const { return val_; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  /// Valuation, or nullopt for exact zero / zero-to-precision.
  std::optional<std::int64_t> valuation() const;
  /// A lower bound on the valuation: the valuation, the truncation order for
  /// zero-to-precision values, and +infinity (INT64_MAX) for the exact zero.
  std::int64_t valuation_bound() const;
  /// Truncation order; nullopt for exact values.
  std::optional<std::int64_t> truncation() const;
  /// Truncation order with +infinity (INT64_MAX) for exact values.
  std::int64_t order() const { return exact_ ? kInfinity : trunc_; }
  /// Exponent one past the last stored coefficient (equals the truncation order for inexact values
  /// when there is no trailing zero run).
  std::int64_t end_exponent() const { return val_ + static_cast<std::int64_t>(coeffs_.size()); }

  /// Coefficient of t^e. Throws PrecisionError when e is at or beyond the truncation order.
  Scalar coeff(std::int64_t e) const;
  /// Leading coefficient; throws PrecisionError if none is certified.
  const Scalar& leading_coefficient() const;
  Scalar constant_term() const { return coeff(0); }

  /// Forget everything at or beyond t^order (no-op if already coarser).
  LaurentSeries truncate(std::int64_t order) const;
  /// Multiply by t^k.
  LaurentSeries shift(std::int64_t k) const;
  LaurentSeries scale(const Scalar& c) const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries& operator+=(const LaurentSeries& b) { return *this = *this + b; }
  LaurentSeries& operator-=(const LaurentSeries& b) { return *this = *this - b; }
  LaurentSeries& operator*=(const LaurentSeries& b) { return *this = *this * b; }

  /// True when every coefficient of t^e with e < order is zero and known to be zero.
  bool is_zero_mod(std::int64_t order) const;
  /// (a - b).is_zero_mod(order)
  bool equals_mod(const LaurentSeries& other, std::int64_t order) const;

  /// Structural equality: same field, exactness, truncation order and coefficients.
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

  /// Human-readable form, e.g. "t^-1 + 1 - 2*t^2 + O(t^4)".
  std::string to_string() const;

  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

 private:
  void normalize();

  Field field_;
  std::int64_t val_ = 0;
  std::vector<Scalar> coeffs_;
  std::int64_t trunc_ = 0;
  bool exact_ = true;
};

enum class SeriesOp { Add, Mul };

/// a + b or a * b with truncation propagated to the tightest implied order.
LaurentSeries series_arith(const LaurentSeries& a, const LaurentSeries& b, SeriesOp op);

/// s^-1 with s * s^-1 = 1 mod t^order. Exact only when s is an exact monomial.
/// Throws PrecisionError when s is zero-to-precision or is not known well enough
/// to reach the requested order; SingularError for the exact zero.
LaurentSeries invert_unit(const LaurentSeries& s, std::int64_t order);

}  // namespace subrank
