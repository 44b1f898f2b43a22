#include "subrank/matrix.hpp"

#include <utility>

#include "subrank/errors.hpp"

namespace subrank {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(Field field, const std::vector<std::vector<Scalar>>& rows)
    : Matrix(std::move(field), rows.size(), rows.empty() ? 0 : rows.front().size()) {
  for (std::size_t i = 0; i < rows_; ++i) {
    if (rows[i].size() != cols_) throw ShapeError("ragged matrix rows");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = rows[i][j];
  }
}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::permutation(const Field& field, const std::vector<std::size_t>& perm) {
  Matrix m(field, perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) m(perm[j], j) = 1;
  return m;
}

Matrix Matrix::unit(const Field& field, std::size_t rows, std::size_t cols, std::size_t a, std::size_t b) {
  Matrix m(field, rows, cols);
  m(a, b) = 1;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a.field_, b.field_, "Matrix::operator*");
  if (a.cols_ != b.rows_) throw ShapeError("matrix product: inner dimensions differ");
  const Field& F = a.field_;
  Matrix c(F, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (Field::is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) F.add_mul(c(i, j), x, b(k, j));
    }
  }
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

namespace {

// Row echelon form in place; returns the rank and accumulates the determinant sign/product.
std::size_t echelon(const Field& F, std::vector<std::vector<Scalar>>& m, std::size_t cols, Scalar* det) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && Field::is_zero(m[pivot][c])) ++pivot;
    if (pivot == m.size()) continue;
    if (pivot != rank) {
      std::swap(m[pivot], m[rank]);
      if (det) *det = F.neg(*det);
    }
    if (det) *det = F.mul(*det, m[rank][c]);
    const Scalar inv = F.inv(m[rank][c]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (Field::is_zero(m[r][c])) continue;
      const Scalar factor = F.mul(m[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) m[r][k] = F.sub(m[r][k], F.mul(factor, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Scalar>> to_rows(const Matrix& a) {
  std::vector<std::vector<Scalar>> m(a.rows(), std::vector<Scalar>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  return m;
}

}  // namespace

std::size_t Matrix::rank() const {
  auto m = to_rows(*this);
  return echelon(field_, m, cols_, nullptr);
}

Scalar Matrix::determinant() const {
  if (!is_square()) throw ShapeError("determinant of a non-square matrix");
  auto m = to_rows(*this);
  Scalar det = field_.one();
  if (echelon(field_, m, cols_, &det) < rows_) return field_.zero();
  return det;
}

Matrix Matrix::inverse() const {
  if (!is_square()) throw ShapeError("inverse of a non-square matrix");
  const Field& F = field_;
  const std::size_t n = rows_;
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (*this)(i, j);
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && Field::is_zero(m[pivot][c])) ++pivot;
    if (pivot == n) throw SingularError("matrix is not invertible");
    std::swap(m[pivot], m[c]);
    const Scalar inv = F.inv(m[c][c]);
    for (auto& x : m[c]) x = F.mul(x, inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || Field::is_zero(m[r][c])) continue;
      const Scalar factor = m[r][c];
      for (std::size_t k = c; k < 2 * n; ++k) m[r][k] = F.sub(m[r][k], F.mul(factor, m[c][k]));
    }
  }
  Matrix out(F, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m[i][n + j];
  return out;
}

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::size_t rank_mod_word_prime(std::uint64_t p, std::vector<std::vector<std::uint64_t>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const std::uint64_t inv = pow_mod(rows[rank][c], p - 2, p);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const std::uint64_t factor = mul_mod(rows[r][c], inv, p);
      auto& target = rows[r];
      const auto& src = rows[rank];
      for (std::size_t k = c; k < cols; ++k) {
        if (src[k] == 0) continue;
        const std::uint64_t sub = mul_mod(factor, src[k], p);
        target[k] = target[k] >= sub ? target[k] - sub : target[k] + p - sub;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace subrank
