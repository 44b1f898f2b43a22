#include "subrank/one_param_subgroup.hpp"

#include "subrank/errors.hpp"

namespace subrank {

OneParamSubgroup::OneParamSubgroup(Field field, std::vector<SubgroupFactor> factors)
    : field_(std::move(field)), factors_(std::move(factors)) {
  inverses_.reserve(factors_.size());
  for (const auto& f : factors_) {
    const std::size_t n = f.weights.size();
    if (!f.basis) {
      inverses_.push_back(Matrix::identity(field_, n));
      continue;
    }
    require_same_field(field_, f.basis->field(), "OneParamSubgroup");
    if (f.basis->rows() != n || f.basis->cols() != n) {
      throw ShapeError("one-parameter subgroup basis must be square and match its weight count");
    }
    inverses_.push_back(f.basis->inverse());  // throws SingularError for a singular basis
  }
}

OneParamSubgroup OneParamSubgroup::standard(const Field& field, std::vector<std::vector<BigInt>> weights) {
  std::vector<SubgroupFactor> factors;
  factors.reserve(weights.size());
  for (auto& w : weights) factors.push_back(SubgroupFactor{std::nullopt, std::move(w)});
  return OneParamSubgroup(field, std::move(factors));
}

OneParamSubgroup OneParamSubgroup::trivial(const Field& field, const std::vector<std::size_t>& dims) {
  std::vector<std::vector<BigInt>> weights;
  for (auto n : dims) weights.emplace_back(n, BigInt(0));
  return standard(field, std::move(weights));
}

std::vector<std::size_t> OneParamSubgroup::dims() const {
  std::vector<std::size_t> d;
  for (const auto& f : factors_) d.push_back(f.weights.size());
  return d;
}

bool OneParamSubgroup::is_standard() const {
  for (const auto& f : factors_)
    if (f.basis && !f.basis->is_identity()) return false;
  return true;
}

Matrix OneParamSubgroup::basis(std::size_t i) const {
  const auto& f = factors_[i];
  return f.basis ? *f.basis : Matrix::identity(field_, f.weights.size());
}

OneParamSubgroup OneParamSubgroup::inverse() const {
  auto factors = factors_;
  for (auto& f : factors)
    for (auto& w : f.weights) w = -w;
  return OneParamSubgroup(field_, std::move(factors));
}

SeriesMatrix OneParamSubgroup::factor_at_t(std::size_t i) const {
  std::vector<std::int64_t> exps;
  for (const auto& w : factors_[i].weights) {
    if (!w.fits_slong_p()) throw InputError("weight " + w.get_str() + " is too large to expand as a series");
    exps.push_back(w.get_si());
  }
  const SeriesMatrix diag = SeriesMatrix::diagonal_monomials(field_, exps);
  if (!factors_[i].basis) return diag;
  return SeriesMatrix::from_constant(*factors_[i].basis) * diag * SeriesMatrix::from_constant(inverses_[i]);
}

std::vector<SeriesMatrix> OneParamSubgroup::at_t() const {
  std::vector<SeriesMatrix> out;
  for (std::size_t i = 0; i < order(); ++i) out.push_back(factor_at_t(i));
  return out;
}

bool operator==(const OneParamSubgroup& a, const OneParamSubgroup& b) {
  if (!(a.field_ == b.field_) || a.order() != b.order()) return false;
  for (std::size_t i = 0; i < a.order(); ++i) {
    if (a.factors_[i].weights != b.factors_[i].weights) return false;
    if (!(a.basis(i) == b.basis(i))) return false;
  }
  return true;
}

namespace {

// Coordinates of t in the lambda-eigenbasis.
Tensor to_eigenbasis(const OneParamSubgroup& lambda, const Tensor& t) {
  if (lambda.is_standard()) return t;
  std::vector<Matrix> inv;
  for (std::size_t i = 0; i < lambda.order(); ++i) inv.push_back(lambda.basis_inverse(i));
  return act(inv, t);
}

Tensor from_eigenbasis(const OneParamSubgroup& lambda, const Tensor& t) {
  if (lambda.is_standard()) return t;
  std::vector<Matrix> h;
  for (std::size_t i = 0; i < lambda.order(); ++i) h.push_back(lambda.basis(i));
  return act(h, t);
}

BigInt weight_of(const OneParamSubgroup& lambda, const Index& idx) {
  BigInt w = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) w += lambda.factor(i).weights[idx[i]];
  return w;
}

void check_dims(const OneParamSubgroup& lambda, const Tensor& t) {
  require_same_field(lambda.field(), t.field(), "one-parameter subgroup action");
  if (lambda.dims() != t.dims()) throw ShapeError("one-parameter subgroup dims do not match tensor dims");
}

}  // namespace

Tensor WeightDecomposition::component_in_original_basis(const BigInt& weight) const {
  auto it = components.find(weight);
  if (it == components.end()) return Tensor(base.field(), base.dims());
  return from_eigenbasis(base, it->second);
}

Tensor WeightDecomposition::reconstruct() const {
  Tensor sum(base.field(), base.dims());
  for (const auto& [w, c] : components) sum = sum + c;
  return from_eigenbasis(base, sum);
}

WeightDecomposition weight_decompose(const Tensor& t, const OneParamSubgroup& lambda) {
  check_dims(lambda, t);
  const Tensor coords = to_eigenbasis(lambda, t);
  WeightDecomposition dec{lambda, {}};
  for (std::size_t off = 0; off < coords.size(); ++off) {
    if (Field::is_zero(coords[off])) continue;
    const Index idx = coords.index_of(off);
    auto [it, inserted] = dec.components.try_emplace(weight_of(lambda, idx), t.field(), t.dims());
    it->second[off] = coords[off];
  }
  return dec;
}

LimitOutcome try_limit(const OneParamSubgroup& lambda, const Tensor& t, LimitDirection direction) {
  if (direction == LimitDirection::ToInfinity) return try_limit(lambda.inverse(), t, LimitDirection::ToZero);
  check_dims(lambda, t);
  const Tensor coords = to_eigenbasis(lambda, t);
  Tensor zero_part(t.field(), t.dims());
  for (std::size_t off = 0; off < coords.size(); ++off) {
    if (Field::is_zero(coords[off])) continue;
    const Index idx = coords.index_of(off);
    const BigInt w = weight_of(lambda, idx);
    const int sign = sgn(w);
    if (sign < 0) return LimitOutcome{std::nullopt, idx, w};
    if (sign == 0) zero_part[off] = coords[off];
  }
  return LimitOutcome{from_eigenbasis(lambda, zero_part), {}, BigInt(0)};
}

Tensor ops_limit(const OneParamSubgroup& lambda, const Tensor& t, LimitDirection direction) {
  LimitOutcome out = try_limit(lambda, t, direction);
  if (out.limit) return std::move(*out.limit);
  std::string pos;
  for (auto i : out.obstruction) pos += (pos.empty() ? "" : ",") + std::to_string(i + 1);
  BigInt w = direction == LimitDirection::ToInfinity ? BigInt(-out.obstruction_weight) : out.obstruction_weight;
  throw NoLimitError(std::string("no limit as t -> ") + (direction == LimitDirection::ToZero ? "0" : "infinity") +
                     ": eigenbasis position (" + pos + ") has weight " + w.get_str());
}

}  // namespace subrank
