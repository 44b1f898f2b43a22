#pragma once

#include <map>
#include <optional>
#include <vector>

#include "subrank/field.hpp"
#include "subrank/matrix.hpp"
#include "subrank/series_matrix.hpp"
#include "subrank/tensor.hpp"

namespace subrank {

/// One factor of a one-parameter subgroup: lambda_i(t) = h diag(t^a_1, ..., t^a_n) h^-1.
struct SubgroupFactor {
  std::optional<Matrix> basis;  // nullopt means the standard basis
  std::vector<BigInt> weights;
};

/// A one-parameter subgroup of GL(V_1) x ... x GL(V_d), one conjugated diagonal
/// factor per tensor factor. Weights are arbitrary-precision integers.
class OneParamSubgroup {
 public:
  /// Validates that every basis is square, invertible and matches its weight list.
  OneParamSubgroup(Field field, std::vector<SubgroupFactor> factors);

  static OneParamSubgroup standard(const Field& field, std::vector<std::vector<BigInt>> weights);
  /// All weights zero.
  static OneParamSubgroup trivial(const Field& field, const std::vector<std::size_t>& dims);

  const Field& field() const { return field_; }
  std::size_t order() const { return factors_.size(); }
  const SubgroupFactor& factor(std::size_t i) const { return factors_[i]; }
  const std::vector<SubgroupFactor>& factors() const { return factors_; }
  std::vector<std::size_t> dims() const;
  bool is_standard() const;

  Matrix basis(std::size_t i) const;
  const Matrix& basis_inverse(std::size_t i) const { return inverses_[i]; }

  /// t -> lambda(t^-1): same bases, negated weights.
  OneParamSubgroup inverse() const;

  /// lambda_i(t) as a series matrix. Throws InputError when a weight does not fit in 64 bits.
  SeriesMatrix factor_at_t(std::size_t i) const;
  std::vector<SeriesMatrix> at_t() const;

  friend bool operator==(const OneParamSubgroup& a, const OneParamSubgroup& b);

 private:
  Field field_;
  std::vector<SubgroupFactor> factors_;
  std::vector<Matrix> inverses_;
};

/// Decomposition of a tensor into lambda-weight components.
///
/// Components are expressed in the lambda-eigenbasis (coordinates after applying
/// the inverse bases); `reconstruct` maps them back.
struct WeightDecomposition {
  OneParamSubgroup base;
  std::map<BigInt, Tensor> components;

  /// The component of weight a mapped back to the original coordinates (zero if absent).
  Tensor component_in_original_basis(const BigInt& weight) const;
  /// Sum of all components, mapped back; equals the decomposed tensor.
  Tensor reconstruct() const;
};

WeightDecomposition weight_decompose(const Tensor& t, const OneParamSubgroup& lambda);

enum class LimitDirection { ToZero, ToInfinity };

/// Result of limit analysis: either the limit or an obstructing position/weight.
struct LimitOutcome {
  std::optional<Tensor> limit;
  Index obstruction;     // eigenbasis position with a weight of the wrong sign
  BigInt obstruction_weight;
};

/// lim lambda(t) . T by sign analysis of weight sums (no series expansion).
LimitOutcome try_limit(const OneParamSubgroup& lambda, const Tensor& t, LimitDirection direction);

/// As try_limit, throwing NoLimitError with the witnessing weight and position.
Tensor ops_limit(const OneParamSubgroup& lambda, const Tensor& t, LimitDirection direction);

}  // namespace subrank
