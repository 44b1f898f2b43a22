#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subrank/loop_group.hpp"
#include "subrank/one_param_subgroup.hpp"
#include "subrank/tensor.hpp"

namespace subrank {

/// How the group factor GL_n acts on the corresponding tensor factor.
enum class FactorRep {
  Standard,  // GL(V_i) acting naturally on V_i
  Sym3,      // GL_2 acting on binary cubics K[x,y]_3 by g.f(x,y) = f(dx - by, -cx + ay)
};

/// Matrix of g on binary cubics in the ordered basis (x^3, x^2 y, x y^2, y^3).
Matrix sym3_lift(const Matrix& g);
SeriesMatrix sym3_lift(const SeriesMatrix& g);

/// Dimension of the tensor factor for a group factor of size n.
std::size_t rep_dimension(FactorRep rep, std::size_t group_n);
Matrix lift(FactorRep rep, const Matrix& g);
SeriesMatrix lift(FactorRep rep, const SeriesMatrix& g);
/// Lift of one one-parameter subgroup factor (basis lifted, weights of the induced action).
SubgroupFactor lift(FactorRep rep, const SubgroupFactor& factor);
OneParamSubgroup lift(const std::vector<FactorRep>& reps, const OneParamSubgroup& lambda);

/// q = lim_{t->0} g(t) . p where each g_i already acts on V_i. Throws NoLimitError
/// naming the offending entry when some entry of g(t).p has negative valuation.
Tensor check_specialization(const std::vector<SeriesMatrix>& g, const Tensor& p);

/// Executable form of the generalised Hilbert-Mumford criterion for a curve g(t) with
/// lim g(t).p = q: lim_{t->0} lambda(t).p = lim_{t->inf} lambda(t).q_tilde = shared_limit.
struct HmWitness {
  std::vector<FactorRep> reps;
  OneParamSubgroup lambda;          // in the group: basis h2(0), CIM weights
  Tensor q;                         // the specialization of p along g
  Tensor q_tilde;                   // translation . q
  Tensor shared_limit;
  std::vector<Matrix> translation;  // h2(0) h1(0)^-1 per factor, in the group
  std::vector<CimDecomposition> cim;

  /// lambda acting on the tensor space.
  OneParamSubgroup lifted_lambda() const { return lift(reps, lambda); }
};

/// Builds and verifies the witness. `g` holds group elements (2x2 for Sym3 factors).
/// Throws NoLimitError when g does not specialize p, WitnessVerificationFailure when
/// the two limits disagree, and propagates CIM errors.
HmWitness hm_witness(const std::vector<SeriesMatrix>& g, const Tensor& p, std::int64_t precision = kDefaultPrecision,
                     std::vector<FactorRep> reps = {}, int max_doublings = 5);

/// Re-derives every claim of a stored witness; returns the names of failed clauses.
std::vector<std::string> verify_witness(const std::vector<SeriesMatrix>& g, const Tensor& p, const HmWitness& w);

}  // namespace subrank
