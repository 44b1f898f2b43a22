#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "subrank/field.hpp"

namespace subrank {

/// Dense matrix of field elements, row-major.
class Matrix {
 public:
  Matrix() : Matrix(Field::rationals(), 0, 0) {}
  Matrix(Field field, std::size_t rows, std::size_t cols);
  /// Builds from rows of scalars (already valid field elements).
  Matrix(Field field, const std::vector<std::vector<Scalar>>& rows);

  static Matrix identity(const Field& field, std::size_t n);
  /// Permutation matrix with P(perm[j], j) = 1.
  static Matrix permutation(const Field& field, const std::vector<std::size_t>& perm);
  /// Matrix unit E_ab (0-based).
  static Matrix unit(const Field& field, std::size_t rows, std::size_t cols, std::size_t a, std::size_t b);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  bool is_identity() const;
  std::size_t rank() const;
  Scalar determinant() const;
  bool is_invertible() const { return is_square() && rank() == rows_; }
  /// Throws SingularError when not invertible, ShapeError when not square.
  Matrix inverse() const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// Rank over F_p for p < 2^63 of a dense matrix of residues (consumed).
std::size_t rank_mod_word_prime(std::uint64_t p, std::vector<std::vector<std::uint64_t>> rows);

}  // namespace subrank
