#include "subrank/series_matrix.hpp"

#include <algorithm>
#include <numeric>

#include "subrank/errors.hpp"

namespace subrank {

SeriesMatrix::SeriesMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, LaurentSeries(field_)) {}

SeriesMatrix::SeriesMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<LaurentSeries> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw ShapeError("SeriesMatrix: entry count does not match shape");
  for (const auto& e : entries_) require_same_field(field_, e.field(), "SeriesMatrix");
  harmonize();
}

void SeriesMatrix::harmonize() {
  if (auto order = precision()) {
    for (auto& e : entries_)
      if (!e.is_exact()) e = e.truncate(*order);
  }
}

SeriesMatrix SeriesMatrix::identity(const Field& field, std::size_t n) {
  SeriesMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = LaurentSeries::constant(field, field.one());
  return m;
}

SeriesMatrix SeriesMatrix::from_constant(const Matrix& c) {
  SeriesMatrix m(c.field(), c.rows(), c.cols());
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) m.entries_[i * c.cols() + j] = LaurentSeries::constant(c.field(), c(i, j));
  return m;
}

SeriesMatrix SeriesMatrix::diagonal_monomials(const Field& field, const std::vector<std::int64_t>& exponents) {
  const std::size_t n = exponents.size();
  SeriesMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = LaurentSeries::monomial(field, field.one(), exponents[i]);
  return m;
}

void SeriesMatrix::set(std::size_t i, std::size_t j, LaurentSeries value) {
  require_same_field(field_, value.field(), "SeriesMatrix::set");
  entries_[i * cols_ + j] = std::move(value);
  harmonize();
}

std::optional<std::int64_t> SeriesMatrix::precision() const {
  std::optional<std::int64_t> order;
  for (const auto& e : entries_) {
    if (auto t = e.truncation()) order = order ? std::min(*order, *t) : *t;
  }
  return order;
}

std::int64_t SeriesMatrix::min_valuation() const {
  std::int64_t v = LaurentSeries::kInfinity;
  for (const auto& e : entries_) v = std::min(v, e.valuation_bound());
  return v;
}

SeriesMatrix SeriesMatrix::shift(std::int64_t k) const {
  SeriesMatrix m = *this;
  for (auto& e : m.entries_) e = e.shift(k);
  return m;
}

SeriesMatrix SeriesMatrix::truncate(std::int64_t order) const {
  SeriesMatrix m = *this;
  for (auto& e : m.entries_) e = e.truncate(order);
  m.harmonize();
  return m;
}

bool SeriesMatrix::is_power_series() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const LaurentSeries& e) {
    return e.is_zero() || (e.has_certified_valuation() ? e.offset() >= 0 : e.order() >= 0);
  });
}

Matrix SeriesMatrix::constant_term() const {
  Matrix c(field_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& e = (*this)(i, j);
      if (e.has_certified_valuation() && e.offset() < 0) {
        throw PrecisionError("constant_term: entry (" + std::to_string(i) + "," + std::to_string(j) +
                             ") has a pole of order " + std::to_string(-e.offset()));
      }
      c(i, j) = e.coeff(0);
    }
  }
  return c;
}

bool SeriesMatrix::equals_mod(const SeriesMatrix& other, std::int64_t order) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t k = 0; k < entries_.size(); ++k)
    if (!entries_[k].equals_mod(other.entries_[k], order)) return false;
  return true;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  require_same_field(a.field_, b.field_, "SeriesMatrix::operator*");
  if (a.cols_ != b.rows_) throw ShapeError("series matrix product: inner dimensions differ");
  std::vector<LaurentSeries> out(a.rows_ * b.cols_, LaurentSeries(a.field_));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      LaurentSeries acc(a.field_);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& x = a(i, k);
        const auto& y = b(k, j);
        if (x.is_zero() || y.is_zero()) continue;
        acc += x * y;
      }
      out[i * b.cols_ + j] = std::move(acc);
    }
  return SeriesMatrix(a.field_, a.rows_, b.cols_, std::move(out));
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
  require_same_field(a.field_, b.field_, "SeriesMatrix::operator+");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("series matrix sum: shapes differ");
  std::vector<LaurentSeries> out(a.entries_.size(), LaurentSeries(a.field_));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.entries_[k] + b.entries_[k];
  return SeriesMatrix(a.field_, a.rows_, a.cols_, std::move(out));
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
  require_same_field(a.field_, b.field_, "SeriesMatrix::operator-");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("series matrix difference: shapes differ");
  std::vector<LaurentSeries> out(a.entries_.size(), LaurentSeries(a.field_));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.entries_[k] - b.entries_[k];
  return SeriesMatrix(a.field_, a.rows_, a.cols_, std::move(out));
}

bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

namespace {

LaurentSeries cofactor_det(const SeriesMatrix& m, std::vector<std::size_t>& rows, std::size_t col) {
  const Field& F = m.field();
  if (rows.empty()) return LaurentSeries::constant(F, F.one());
  LaurentSeries det(F);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& entry = m(rows[k], col);
    if (entry.is_zero()) continue;
    const std::size_t r = rows[k];
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(k));
    LaurentSeries term = entry * cofactor_det(m, rows, col + 1);
    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(k), r);
    det = (k % 2 == 0) ? det + term : det - term;
  }
  return det;
}

// One Gauss-Jordan pass with unit inversions carried to `working` precision.
SeriesMatrix gauss_jordan(const SeriesMatrix& m, std::int64_t working) {
  const Field& F = m.field();
  const std::size_t n = m.rows();
  std::vector<std::vector<LaurentSeries>> a(n, std::vector<LaurentSeries>(2 * n, LaurentSeries(F)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = LaurentSeries::constant(F, F.one());
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::optional<std::size_t> pivot;
    bool all_exact_zero = true;
    for (std::size_t r = c; r < n; ++r) {
      const auto& e = a[r][c];
      if (!e.is_zero()) all_exact_zero = false;
      if (e.has_certified_valuation() && (!pivot || e.offset() < a[*pivot][c].offset())) pivot = r;
    }
    if (!pivot) {
      if (all_exact_zero) throw SingularError("invert: determinant is exactly zero");
      throw PrecisionError("invert: no pivot with certifiable valuation in column " + std::to_string(c));
    }
    std::swap(a[*pivot], a[c]);
    const auto& p = a[c][c];
    const std::int64_t v = *p.valuation();
    std::int64_t reach = working;
    if (!p.is_exact()) reach = std::min(reach, p.order() - v);
    const LaurentSeries p_inv = invert_unit(p, reach);
    for (auto& x : a[c]) x = x * p_inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const LaurentSeries factor = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) {
        if (k == c) continue;
        if (!a[c][k].is_zero()) a[r][k] -= factor * a[c][k];
      }
      a[r][c] = LaurentSeries(F);
    }
  }
  std::vector<LaurentSeries> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.push_back(a[i][n + j]);
  return SeriesMatrix(F, n, n, std::move(out));
}

}  // namespace

LaurentSeries SeriesMatrix::determinant() const {
  if (!is_square()) throw ShapeError("determinant of a non-square series matrix");
  if (rows_ > 8) throw ShapeError("cofactor determinant limited to n <= 8");
  std::vector<std::size_t> rows(rows_);
  std::iota(rows.begin(), rows.end(), 0);
  return cofactor_det(*this, rows, 0);
}

SeriesMatrix invert(const SeriesMatrix& m, std::int64_t order) {
  if (!m.is_square()) throw ShapeError("invert: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  const SeriesMatrix id = SeriesMatrix::identity(m.field(), n);
  std::int64_t spread = 0;
  if (m.min_valuation() != LaurentSeries::kInfinity) spread = std::max<std::int64_t>(0, -m.min_valuation());
  std::int64_t working = std::max<std::int64_t>(order, 1) + spread + 4;
  for (int attempt = 0; attempt < 8; ++attempt) {
    SeriesMatrix inv = gauss_jordan(m, working);
    if ((m * inv).equals_mod(id, order)) return inv;
    working *= 2;
  }
  throw PrecisionError("invert: cannot certify M * M^-1 = I mod t^" + std::to_string(order) +
                       " from the precision carried by M");
}

SeriesMatrix series_mat(const SeriesMatrix& a, const SeriesMatrix& b, SeriesMatOp op, std::int64_t order) {
  if (op == SeriesMatOp::Mul) return a * b;
  return invert(a, order);
}

}  // namespace subrank
