#include "subrank/tensor.hpp"

#include <algorithm>
#include <set>

#include "subrank/errors.hpp"

namespace subrank {

Tensor::Tensor(Field field, std::vector<std::size_t> dims) : field_(std::move(field)) {
  if (dims.size() < 2) throw ShapeError("tensor order must be at least 2");
  data_ = NdArray<Scalar>(std::move(dims), Scalar(0));
}

std::vector<Index> Tensor::support() const {
  std::vector<Index> out;
  for (std::size_t off = 0; off < data_.size(); ++off)
    if (!Field::is_zero(data_[off])) out.push_back(data_.index_of(off));
  return out;
}

std::size_t Tensor::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(data_.data().begin(), data_.data().end(), [](const Scalar& x) { return !Field::is_zero(x); }));
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  require_same_field(a.field_, b.field_, "Tensor::operator+");
  if (a.dims() != b.dims()) throw ShapeError("tensor sum: dims differ");
  Tensor c = a;
  for (std::size_t off = 0; off < c.size(); ++off) c[off] = a.field_.add(a[off], b[off]);
  return c;
}

SeriesTensor::SeriesTensor(Field field, std::vector<std::size_t> dims)
    : field_(field), data_(std::move(dims), LaurentSeries(field)) {
  if (data_.order() < 2) throw ShapeError("tensor order must be at least 2");
}

std::int64_t SeriesTensor::min_valuation() const {
  std::int64_t v = LaurentSeries::kInfinity;
  for (const auto& e : data_.data()) v = std::min(v, e.valuation_bound());
  return v;
}

Tensor SeriesTensor::constant_term() const {
  Tensor out(field_, dims());
  for (std::size_t off = 0; off < data_.size(); ++off) out[off] = data_[off].coeff(0);
  return out;
}

SeriesTensor SeriesTensor::from_constant(const Tensor& t) {
  SeriesTensor out(t.field(), t.dims());
  for (std::size_t off = 0; off < t.size(); ++off)
    if (!Field::is_zero(t[off])) out[off] = LaurentSeries::constant(t.field(), t[off]);
  return out;
}

namespace {

struct ModeLayout {
  std::size_t before = 1;
  std::size_t extent = 1;
  std::size_t after = 1;
};

ModeLayout layout(const std::vector<std::size_t>& dims, std::size_t mode) {
  ModeLayout l;
  for (std::size_t i = 0; i < mode; ++i) l.before *= dims[i];
  l.extent = dims[mode];
  for (std::size_t i = mode + 1; i < dims.size(); ++i) l.after *= dims[i];
  return l;
}

// out[o, r, in] = sum_j coeff(r, j) * in[o, j, in]
template <typename Elem, typename Coeff, typename MulAdd, typename IsZero>
NdArray<Elem> mode_product(const NdArray<Elem>& in, std::size_t mode, std::size_t out_extent, const Elem& zero,
                           Coeff coeff, MulAdd mul_add, IsZero is_zero) {
  std::vector<std::size_t> out_dims = in.dims();
  out_dims[mode] = out_extent;
  NdArray<Elem> out(out_dims, zero);
  const ModeLayout l = layout(in.dims(), mode);
  for (std::size_t o = 0; o < l.before; ++o) {
    for (std::size_t j = 0; j < l.extent; ++j) {
      const std::size_t src_base = (o * l.extent + j) * l.after;
      for (std::size_t r = 0; r < out_extent; ++r) {
        const auto& c = coeff(r, j);
        if (is_zero(c)) continue;
        const std::size_t dst_base = (o * out_extent + r) * l.after;
        for (std::size_t k = 0; k < l.after; ++k) mul_add(out[dst_base + k], c, in[src_base + k]);
      }
    }
  }
  return out;
}

}  // namespace

Tensor act_mode(const Matrix& g, std::size_t mode, const Tensor& t) {
  require_same_field(g.field(), t.field(), "act");
  if (mode >= t.order() || g.cols() != t.dims()[mode]) throw ShapeError("act: matrix shape does not fit tensor mode");
  const Field& F = t.field();
  Tensor out(F, t.dims());
  auto arr = mode_product<Scalar>(
      t.array(), mode, g.rows(), Scalar(0), [&](std::size_t r, std::size_t j) -> const Scalar& { return g(r, j); },
      [&](Scalar& acc, const Scalar& c, const Scalar& x) { F.add_mul(acc, c, x); },
      [](const Scalar& c) { return Field::is_zero(c); });
  std::vector<std::size_t> dims = arr.dims();
  Tensor result(F, dims);
  for (std::size_t off = 0; off < arr.size(); ++off) result[off] = arr[off];
  return result;
}

Tensor act(const std::vector<Matrix>& g, const Tensor& t) {
  if (g.size() != t.order()) throw ShapeError("act: need one matrix per tensor factor");
  Tensor cur = t;
  for (std::size_t mode = 0; mode < g.size(); ++mode) {
    if (g[mode].is_identity() && g[mode].rows() == cur.dims()[mode]) continue;
    cur = act_mode(g[mode], mode, cur);
  }
  return cur;
}

SeriesTensor act_series(const std::vector<SeriesMatrix>& g, const SeriesTensor& t) {
  if (g.size() != t.dims().size()) throw ShapeError("act_series: need one matrix per tensor factor");
  const Field& F = t.field();
  SeriesTensor cur = t;
  for (std::size_t mode = 0; mode < g.size(); ++mode) {
    require_same_field(g[mode].field(), F, "act_series");
    if (g[mode].cols() != cur.dims()[mode]) throw ShapeError("act_series: matrix shape does not fit tensor mode");
    auto arr = mode_product<LaurentSeries>(
        cur.array(), mode, g[mode].rows(), LaurentSeries(F),
        [&](std::size_t r, std::size_t j) -> const LaurentSeries& { return g[mode](r, j); },
        [](LaurentSeries& acc, const LaurentSeries& c, const LaurentSeries& x) {
          if (!x.is_zero()) acc += c * x;
        },
        [](const LaurentSeries& c) { return c.is_zero(); });
    SeriesTensor next(F, arr.dims());
    next.array() = std::move(arr);
    cur = std::move(next);
  }
  return cur;
}

SeriesTensor act_series(const std::vector<SeriesMatrix>& g, const Tensor& t) {
  return act_series(g, SeriesTensor::from_constant(t));
}

Tensor unit_tensor(std::size_t r, std::size_t d, const Field& field) {
  Tensor t(field, std::vector<std::size_t>(d, r));
  for (std::size_t i = 0; i < r; ++i) t.set(Index(d, i), field.one());
  return t;
}

std::optional<std::size_t> is_diagonal_unit_equivalent(const Tensor& t) {
  const auto support = t.support();
  for (std::size_t mode = 0; mode < t.order(); ++mode) {
    std::set<std::size_t> seen;
    for (const auto& idx : support)
      if (!seen.insert(idx[mode]).second) return std::nullopt;
  }
  return support.size();
}

}  // namespace subrank
