#include "subrank/hm_witness.hpp"

#include <array>

#include "subrank/errors.hpp"

namespace subrank {

namespace {

// Coefficients of a binary form of degree <= 3 in the basis x^k y^(deg-k), highest x power first.
template <typename R, typename Ops>
std::vector<R> poly_mul(const std::vector<R>& a, const std::vector<R>& b, const Ops& ops) {
  std::vector<R> out(a.size() + b.size() - 1, ops.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = ops.add(out[i + j], ops.mul(a[i], b[j]));
  return out;
}

// Column i holds X^(3-i) Y^i with X = d x - b y and Y = -c x + a y.
template <typename R, typename Ops>
std::array<std::array<R, 4>, 4> sym3_columns(const R& a, const R& b, const R& c, const R& d, const Ops& ops) {
  const std::vector<R> X = {d, ops.neg(b)};
  const std::vector<R> Y = {ops.neg(c), a};
  std::array<std::array<R, 4>, 4> cols;
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<R> f = {ops.one()};
    for (std::size_t k = 0; k < 3 - i; ++k) f = poly_mul(f, X, ops);
    for (std::size_t k = 0; k < i; ++k) f = poly_mul(f, Y, ops);
    for (std::size_t r = 0; r < 4; ++r) cols[i][r] = f[r];
  }
  return cols;
}

struct ScalarOps {
  const Field& F;
  Scalar zero() const { return F.zero(); }
  Scalar one() const { return F.one(); }
  Scalar add(const Scalar& x, const Scalar& y) const { return F.add(x, y); }
  Scalar mul(const Scalar& x, const Scalar& y) const { return F.mul(x, y); }
  Scalar neg(const Scalar& x) const { return F.neg(x); }
};

struct SeriesOps {
  const Field& F;
  LaurentSeries zero() const { return LaurentSeries(F); }
  LaurentSeries one() const { return LaurentSeries::constant(F, F.one()); }
  LaurentSeries add(const LaurentSeries& x, const LaurentSeries& y) const { return x + y; }
  LaurentSeries mul(const LaurentSeries& x, const LaurentSeries& y) const { return x * y; }
  LaurentSeries neg(const LaurentSeries& x) const { return -x; }
};

}  // namespace

Matrix sym3_lift(const Matrix& g) {
  if (g.rows() != 2 || g.cols() != 2) throw ShapeError("sym3_lift: expected a 2x2 matrix");
  const auto cols = sym3_columns(g(0, 0), g(0, 1), g(1, 0), g(1, 1), ScalarOps{g.field()});
  Matrix out(g.field(), 4, 4);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) out(i, j) = cols[j][i];
  return out;
}

SeriesMatrix sym3_lift(const SeriesMatrix& g) {
  if (g.rows() != 2 || g.cols() != 2) throw ShapeError("sym3_lift: expected a 2x2 matrix");
  const auto cols = sym3_columns(g(0, 0), g(0, 1), g(1, 0), g(1, 1), SeriesOps{g.field()});
  std::vector<LaurentSeries> entries;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) entries.push_back(cols[j][i]);
  return SeriesMatrix(g.field(), 4, 4, std::move(entries));
}

std::size_t rep_dimension(FactorRep rep, std::size_t group_n) {
  if (rep == FactorRep::Standard) return group_n;
  if (group_n != 2) throw ShapeError("Sym3 representation needs a GL_2 factor");
  return 4;
}

Matrix lift(FactorRep rep, const Matrix& g) { return rep == FactorRep::Standard ? g : sym3_lift(g); }

SeriesMatrix lift(FactorRep rep, const SeriesMatrix& g) { return rep == FactorRep::Standard ? g : sym3_lift(g); }

SubgroupFactor lift(FactorRep rep, const SubgroupFactor& factor) {
  if (rep == FactorRep::Standard) return factor;
  if (factor.weights.size() != 2) throw ShapeError("Sym3 representation needs a GL_2 factor");
  // diag(t^w1, t^w2) sends x^(3-i) y^i to t^((3-i) w2 + i w1) x^(3-i) y^i.
  SubgroupFactor out;
  for (long i = 0; i < 4; ++i) out.weights.push_back((3 - i) * factor.weights[1] + i * factor.weights[0]);
  if (factor.basis) out.basis = sym3_lift(*factor.basis);
  return out;
}

OneParamSubgroup lift(const std::vector<FactorRep>& reps, const OneParamSubgroup& lambda) {
  if (reps.size() != lambda.order()) throw ShapeError("one representation per factor required");
  std::vector<SubgroupFactor> factors;
  for (std::size_t i = 0; i < reps.size(); ++i) factors.push_back(lift(reps[i], lambda.factor(i)));
  return OneParamSubgroup(lambda.field(), std::move(factors));
}

Tensor check_specialization(const std::vector<SeriesMatrix>& g, const Tensor& p) {
  const SeriesTensor gp = act_series(g, p);
  for (std::size_t off = 0; off < gp.size(); ++off) {
    const auto& e = gp[off];
    std::string pos;
    for (auto i : gp.index_of(off)) pos += (pos.empty() ? "" : ",") + std::to_string(i + 1);
    if (e.has_certified_valuation() && e.offset() < 0) {
      throw NoLimitError("g(t).p does not specialize: entry (" + pos + ") has valuation " + std::to_string(e.offset()));
    }
    if (e.is_zero_to_precision() && e.order() <= 0) {
      throw PrecisionError("g(t).p entry (" + pos + ") is not known at t^0");
    }
  }
  return gp.constant_term();
}

HmWitness hm_witness(const std::vector<SeriesMatrix>& g, const Tensor& p, std::int64_t precision,
                     std::vector<FactorRep> reps, int max_doublings) {
  if (reps.empty()) reps.assign(g.size(), FactorRep::Standard);
  if (reps.size() != g.size() || g.size() != p.order()) throw ShapeError("hm_witness: one curve factor per tensor factor");
  const Field& F = p.field();

  std::vector<SeriesMatrix> lifted;
  for (std::size_t i = 0; i < g.size(); ++i) {
    require_same_field(g[i].field(), F, "hm_witness");
    if (rep_dimension(reps[i], g[i].rows()) != p.dims()[i]) throw ShapeError("hm_witness: curve factor does not fit tensor");
    lifted.push_back(lift(reps[i], g[i]));
  }
  HmWitness w{reps, OneParamSubgroup::trivial(F, {}), Tensor(), Tensor(), Tensor(), {}, {}};
  w.q = check_specialization(lifted, p);

  std::vector<SubgroupFactor> factors;
  std::vector<Matrix> lifted_translation;
  for (std::size_t i = 0; i < g.size(); ++i) {
    CimDecomposition dec = cim_decompose(g[i], precision, max_doublings);
    const Matrix h1_0 = dec.h1.constant_term();
    const Matrix h2_0 = dec.h2.constant_term();
    SubgroupFactor f;
    for (auto a : dec.weights) f.weights.emplace_back(static_cast<long>(a));
    if (!h2_0.is_identity()) f.basis = h2_0;
    factors.push_back(std::move(f));
    w.translation.push_back(h2_0 * h1_0.inverse());
    lifted_translation.push_back(lift(reps[i], w.translation.back()));
    w.cim.push_back(std::move(dec));
  }
  w.lambda = OneParamSubgroup(F, std::move(factors));
  w.q_tilde = act(lifted_translation, w.q);

  const OneParamSubgroup on_tensors = w.lifted_lambda();
  LimitOutcome at_zero = try_limit(on_tensors, p, LimitDirection::ToZero);
  LimitOutcome at_infinity = try_limit(on_tensors, w.q_tilde, LimitDirection::ToInfinity);
  if (!at_zero.limit) throw WitnessVerificationFailure("lim_{t->0} lambda(t).p does not exist");
  if (!at_infinity.limit) throw WitnessVerificationFailure("lim_{t->inf} lambda(t).q_tilde does not exist");
  if (!(*at_zero.limit == *at_infinity.limit)) throw WitnessVerificationFailure("the two limits differ");
  w.shared_limit = std::move(*at_zero.limit);
  return w;
}

std::vector<std::string> verify_witness(const std::vector<SeriesMatrix>& g, const Tensor& p, const HmWitness& w) {
  std::vector<std::string> failed;
  const std::size_t d = g.size();
  if (w.reps.size() != d || w.cim.size() != d || w.lambda.order() != d || w.translation.size() != d ||
      p.order() != d) {
    return {"shape"};
  }
  std::vector<SeriesMatrix> lifted;
  bool cim_ok = true;
  bool lambda_ok = true;
  bool translation_ok = true;
  for (std::size_t i = 0; i < d; ++i) {
    lifted.push_back(lift(w.reps[i], g[i]));
    if (!verify_cim(g[i], w.cim[i]).pass) {
      cim_ok = false;
      continue;
    }
    const Matrix h1_0 = w.cim[i].h1.constant_term();
    const Matrix h2_0 = w.cim[i].h2.constant_term();
    const auto& f = w.lambda.factor(i);
    if (!(w.lambda.basis(i) == h2_0) || f.weights.size() != w.cim[i].weights.size()) {
      lambda_ok = false;
    } else {
      for (std::size_t k = 0; k < f.weights.size(); ++k)
        if (f.weights[k] != w.cim[i].weights[k]) lambda_ok = false;
    }
    if (!(w.translation[i] == h2_0 * h1_0.inverse())) translation_ok = false;
  }
  if (!cim_ok) failed.push_back("cim");
  if (!lambda_ok) failed.push_back("lambda");
  if (!translation_ok) failed.push_back("translation");

  Tensor q;
  try {
    q = check_specialization(lifted, p);
    if (!(q == w.q)) failed.push_back("specialization");
  } catch (const Error&) {
    failed.push_back("specialization");
    return failed;
  }
  std::vector<Matrix> lifted_translation;
  for (std::size_t i = 0; i < d; ++i) lifted_translation.push_back(lift(w.reps[i], w.translation[i]));
  if (!(act(lifted_translation, q) == w.q_tilde)) failed.push_back("qTilde");

  const OneParamSubgroup on_tensors = w.lifted_lambda();
  const LimitOutcome at_zero = try_limit(on_tensors, p, LimitDirection::ToZero);
  const LimitOutcome at_infinity = try_limit(on_tensors, w.q_tilde, LimitDirection::ToInfinity);
  if (!at_zero.limit || !(*at_zero.limit == w.shared_limit)) failed.push_back("limit at 0");
  if (!at_infinity.limit || !(*at_infinity.limit == w.shared_limit)) failed.push_back("limit at infinity");
  return failed;
}

}  // namespace subrank
