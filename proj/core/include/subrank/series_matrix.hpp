#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "subrank/laurent_series.hpp"
#include "subrank/matrix.hpp"

namespace subrank {

/// Matrix of Laurent series over one Field, e.g. an element g(t) of GL_n(K((t))).
///
/// Inexact entries share one truncation order: construction truncates every
/// inexact entry to the smallest order present. Exact entries stay exact.
class SeriesMatrix {
 public:
  SeriesMatrix() : SeriesMatrix(Field::rationals(), 0, 0) {}
  /// Zero matrix.
  SeriesMatrix(Field field, std::size_t rows, std::size_t cols);
  SeriesMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<LaurentSeries> entries);

  static SeriesMatrix identity(const Field& field, std::size_t n);
  /// Constant (exact) lift of a scalar matrix.
  static SeriesMatrix from_constant(const Matrix& m);
  /// diag(t^e_1, ..., t^e_n).
  static SeriesMatrix diagonal_monomials(const Field& field, const std::vector<std::int64_t>& exponents);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const LaurentSeries& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  /// Replaces one entry; re-establishes the common truncation order.
  void set(std::size_t i, std::size_t j, LaurentSeries value);
  const std::vector<LaurentSeries>& entries() const { return entries_; }

  /// Common truncation order of the inexact entries; nullopt when all entries are exact.
  std::optional<std::int64_t> precision() const;
  bool is_exact() const { return !precision().has_value(); }
  /// Smallest valuation bound over all entries (+infinity for the zero matrix).
  std::int64_t min_valuation() const;
  /// Multiply every entry by t^k.
  SeriesMatrix shift(std::int64_t k) const;
  SeriesMatrix truncate(std::int64_t order) const;
  /// Value at t = 0. Throws PrecisionError if an entry has a negative power of t
  /// or its constant term is not known.
  Matrix constant_term() const;
  /// All entries have valuation >= 0, i.e. the matrix has entries in K[[t]].
  bool is_power_series() const;

  /// True when every entry of (*this - other) vanishes mod t^order.
  bool equals_mod(const SeriesMatrix& other, std::int64_t order) const;

  friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
  friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b);

  /// Determinant by cofactor expansion (n <= 8). Exact for exact matrices.
  LaurentSeries determinant() const;

 private:
  void harmonize();

  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<LaurentSeries> entries_;
};

enum class SeriesMatOp { Mul, Invert };

/// M^-1 with M * M^-1 = I mod t^order. Gauss-Jordan with minimal-valuation pivots; the
/// working precision is raised until the product identity certifies at `order`.
/// Throws SingularError when det M is exactly zero and PrecisionError when a pivot
/// valuation cannot be certified from the precision carried by M.
SeriesMatrix invert(const SeriesMatrix& m, std::int64_t order = kDefaultPrecision);

/// Dispatcher over {mul, invert}; `b` is ignored for Invert.
SeriesMatrix series_mat(const SeriesMatrix& a, const SeriesMatrix& b, SeriesMatOp op,
                        std::int64_t order = kDefaultPrecision);

}  // namespace subrank
