#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "subrank/laurent_series.hpp"
#include "subrank/matrix.hpp"
#include "subrank/series_matrix.hpp"

namespace subrank {

/// Multi-index into a tensor, 0-based. (The JSON encoding is 1-based.)
using Index = std::vector<std::size_t>;

/// Dense order-d array in row-major layout (last index fastest).
template <typename T>
class NdArray {
 public:
  NdArray() = default;
  NdArray(std::vector<std::size_t> dims, const T& fill) : dims_(std::move(dims)) {
    strides_.assign(dims_.size(), 1);
    std::size_t total = 1;
    for (std::size_t i = dims_.size(); i-- > 0;) {
      strides_[i] = total;
      total *= dims_[i];
    }
    data_.assign(total, fill);
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t order() const { return dims_.size(); }
  std::size_t size() const { return data_.size(); }

  std::size_t offset(const Index& idx) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) off += idx[i] * strides_[i];
    return off;
  }
  Index index_of(std::size_t off) const {
    Index idx(dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      idx[i] = off / strides_[i];
      off %= strides_[i];
    }
    return idx;
  }
  std::size_t stride(std::size_t mode) const { return strides_[mode]; }

  T& operator[](std::size_t off) { return data_[off]; }
  const T& operator[](std::size_t off) const { return data_[off]; }
  T& at(const Index& idx) { return data_[offset(idx)]; }
  const T& at(const Index& idx) const { return data_[offset(idx)]; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const NdArray& a, const NdArray& b) { return a.dims_ == b.dims_ && a.data_ == b.data_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<T> data_;
};

/// Dense tensor in V_1 (x) ... (x) V_d with entries in a Field.
class Tensor {
 public:
  Tensor() : Tensor(Field::rationals(), {0, 0}) {}
  /// Zero tensor. Requires d >= 2; dims may be 0 (the empty unit tensor I_0).
  Tensor(Field field, std::vector<std::size_t> dims);

  const Field& field() const { return field_; }
  const std::vector<std::size_t>& dims() const { return data_.dims(); }
  std::size_t order() const { return data_.order(); }
  std::size_t size() const { return data_.size(); }

  const Scalar& at(const Index& idx) const { return data_.at(idx); }
  void set(const Index& idx, const Scalar& value) { data_.at(idx) = value; }
  const Scalar& operator[](std::size_t off) const { return data_[off]; }
  Scalar& operator[](std::size_t off) { return data_[off]; }
  Index index_of(std::size_t off) const { return data_.index_of(off); }
  std::size_t offset(const Index& idx) const { return data_.offset(idx); }

  /// Positions of the nonzero entries, in row-major order.
  std::vector<Index> support() const;
  std::size_t nonzero_count() const;
  bool is_zero() const { return nonzero_count() == 0; }

  friend Tensor operator+(const Tensor& a, const Tensor& b);
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.field_ == b.field_ && a.data_ == b.data_;
  }

  const NdArray<Scalar>& array() const { return data_; }

 private:
  Field field_;
  NdArray<Scalar> data_;
};

/// Tensor with Laurent-series entries, e.g. g(t) . p.
class SeriesTensor {
 public:
  SeriesTensor(Field field, std::vector<std::size_t> dims);

  const Field& field() const { return field_; }
  const std::vector<std::size_t>& dims() const { return data_.dims(); }
  std::size_t size() const { return data_.size(); }
  const LaurentSeries& at(const Index& idx) const { return data_.at(idx); }
  const LaurentSeries& operator[](std::size_t off) const { return data_[off]; }
  LaurentSeries& operator[](std::size_t off) { return data_[off]; }
  Index index_of(std::size_t off) const { return data_.index_of(off); }

  /// Smallest valuation bound over all entries (+infinity for the zero tensor).
  std::int64_t min_valuation() const;
  /// Coefficient of t^0 entrywise.
  Tensor constant_term() const;
  /// Lift of a constant tensor (exact entries).
  static SeriesTensor from_constant(const Tensor& t);

  NdArray<LaurentSeries>& array() { return data_; }
  const NdArray<LaurentSeries>& array() const { return data_; }

 private:
  Field field_;
  NdArray<LaurentSeries> data_;
};

/// (g_1 (x) ... (x) g_d) T for constant matrices g_i of shape m_i x n_i.
Tensor act(const std::vector<Matrix>& g, const Tensor& t);
/// Applies one matrix along one mode.
Tensor act_mode(const Matrix& g, std::size_t mode, const Tensor& t);
/// (g_1(t) (x) ... (x) g_d(t)) T for series matrices.
SeriesTensor act_series(const std::vector<SeriesMatrix>& g, const Tensor& t);
SeriesTensor act_series(const std::vector<SeriesMatrix>& g, const SeriesTensor& t);

/// I_r = sum_i e_i^(x)d.
Tensor unit_tensor(std::size_t r, std::size_t d, const Field& field = Field::rationals());

/// r when the support consists of r positions whose i-th coordinates are pairwise
/// distinct for every factor i (all such tensors lie in G . I_r); nullopt otherwise.
std::optional<std::size_t> is_diagonal_unit_equivalent(const Tensor& t);

}  // namespace subrank
