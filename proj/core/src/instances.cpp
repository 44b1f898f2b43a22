#include "subrank/instances.hpp"

#include "subrank/errors.hpp"

namespace subrank {

namespace {

Scalar nonzero(const Field& field, std::mt19937_64& rng) {
  for (;;) {
    Scalar c = field.random(rng);
    if (!Field::is_zero(c)) return c;
  }
}

}  // namespace

std::pair<SeriesMatrix, SeriesMatrix> random_unimodular(const Field& field, std::size_t n, std::mt19937_64& rng,
                                                        int steps, int max_degree) {
  SeriesMatrix m = SeriesMatrix::identity(field, n);
  SeriesMatrix inv = SeriesMatrix::identity(field, n);
  {
    SeriesMatrix d(field, n, n);
    SeriesMatrix d_inv(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar c = nonzero(field, rng);
      d.set(i, i, LaurentSeries::constant(field, c));
      d_inv.set(i, i, LaurentSeries::constant(field, field.inv(c)));
    }
    m = d;
    inv = d_inv;
  }
  if (n < 2) return {m, inv};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> degree(0, max_degree);
  for (int step = 0; step < steps; ++step) {
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    while (j == i) j = pick(rng);
    const Scalar c = nonzero(field, rng);
    const int k = degree(rng);
    SeriesMatrix e = SeriesMatrix::identity(field, n);
    SeriesMatrix e_inv = SeriesMatrix::identity(field, n);
    e.set(i, j, LaurentSeries::monomial(field, c, k));
    e_inv.set(i, j, LaurentSeries::monomial(field, field.neg(c), k));
    m = m * e;
    inv = e_inv * inv;
  }
  return {m, inv};
}

SeriesMatrix random_invertible_laurent(const Field& field, std::size_t n, std::mt19937_64& rng, std::int64_t min_exp,
                                       std::int64_t max_exp) {
  if (n == 0 || n > 8) throw InputError("random Laurent matrices need 1 <= n <= 8");
  if (min_exp > max_exp) throw InputError("empty exponent range");
  std::bernoulli_distribution keep(0.6);
  for (;;) {
    std::vector<LaurentSeries> entries;
    entries.reserve(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
      std::vector<Scalar> coeffs;
      for (std::int64_t e = min_exp; e <= max_exp; ++e) coeffs.push_back(keep(rng) ? field.random(rng) : field.zero());
      entries.push_back(LaurentSeries::polynomial(field, min_exp, coeffs));
    }
    SeriesMatrix g(field, n, n, std::move(entries));
    if (!g.determinant().is_zero()) return g;
  }
}

SeriesMatrix random_power_series_unit(const Field& field, std::size_t n, std::mt19937_64& rng, int degree) {
  for (;;) {
    Matrix c(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) c(i, j) = field.random(rng);
    }
    if (!c.is_invertible()) continue;
    std::vector<LaurentSeries> entries;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Scalar> coeffs{c(i, j)};
        for (int k = 1; k <= degree; ++k) coeffs.push_back(field.random(rng));
        entries.push_back(LaurentSeries::polynomial(field, 0, coeffs));
      }
    }
    return SeriesMatrix(field, n, n, std::move(entries));
  }
}

Tensor random_tensor(const Field& field, const std::vector<std::size_t>& dims, std::mt19937_64& rng, double density) {
  Tensor t(field, dims);
  std::bernoulli_distribution keep(density);
  for (std::size_t off = 0; off < t.size(); ++off) {
    if (keep(rng)) t[off] = field.random(rng);
  }
  return t;
}

WitnessInstance random_witness_instance(const Field& field, const std::vector<std::size_t>& dims,
                                        std::mt19937_64& rng, std::int64_t max_weight) {
  std::uniform_int_distribution<std::int64_t> weight(-max_weight, max_weight);
  for (;;) {
    WitnessInstance inst;
    for (std::size_t n : dims) {
      auto [h1, h1_inv] = random_unimodular(field, n, rng);
      auto [h2, h2_inv] = random_unimodular(field, n, rng);
      std::vector<std::int64_t> w(n);
      for (auto& x : w) x = weight(rng);
      inst.g.push_back(h1 * SeriesMatrix::diagonal_monomials(field, w) * h2_inv);
      inst.planted_weights.push_back(std::move(w));
    }
    inst.p = random_tensor(field, dims, rng, 0.7);
    if (inst.p.is_zero()) continue;
    const std::int64_t m = act_series(inst.g, inst.p).min_valuation();
    // A scalar curve t^c I lies in the group, so shifting one factor makes the limit exist and be nonzero.
    if (m != 0) {
      inst.g[0] = inst.g[0].shift(-m);
      for (auto& x : inst.planted_weights[0]) x -= m;
    }
    return inst;
  }
}

}  // namespace subrank
