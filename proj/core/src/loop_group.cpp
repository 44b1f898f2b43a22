#include "subrank/loop_group.hpp"

#include <algorithm>
#include <optional>

#include "subrank/errors.hpp"

namespace subrank {

namespace {

using Grid = std::vector<std::vector<LaurentSeries>>;

Grid to_grid(const SeriesMatrix& m) {
  Grid g(m.rows(), std::vector<LaurentSeries>(m.cols(), LaurentSeries(m.field())));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

Grid identity_grid(const Field& F, std::size_t n) {
  Grid g(n, std::vector<LaurentSeries>(n, LaurentSeries(F)));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = LaurentSeries::constant(F, F.one());
  return g;
}

SeriesMatrix from_grid(const Field& F, const Grid& g) {
  const std::size_t n = g.size();
  std::vector<LaurentSeries> entries;
  entries.reserve(n * n);
  for (const auto& row : g)
    for (const auto& e : row) entries.push_back(e);
  return SeriesMatrix(F, n, n, std::move(entries));
}

void swap_cols(Grid& g, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (auto& row : g) std::swap(row[a], row[b]);
}

// col_dst += c * col_src
void add_col(Grid& g, std::size_t dst, std::size_t src, const LaurentSeries& c) {
  for (auto& row : g)
    if (!row[src].is_zero()) row[dst] += c * row[src];
}

// row_dst += c * row_src
void add_row(Grid& g, std::size_t dst, std::size_t src, const LaurentSeries& c) {
  for (std::size_t j = 0; j < g[src].size(); ++j)
    if (!g[src][j].is_zero()) g[dst][j] += c * g[src][j];
}

struct Pivot {
  std::size_t row;
  std::size_t col;
  std::int64_t valuation;
};

Pivot choose_pivot(const Grid& a, std::size_t k) {
  const std::size_t n = a.size();
  std::optional<Pivot> best;
  bool all_exact_zero = true;
  std::int64_t uncertain = LaurentSeries::kInfinity;
  for (std::size_t i = k; i < n; ++i) {
    for (std::size_t j = k; j < n; ++j) {
      const auto& e = a[i][j];
      if (!e.is_zero()) all_exact_zero = false;
      if (e.is_zero_to_precision()) uncertain = std::min(uncertain, e.order());
      if (e.has_certified_valuation() && (!best || e.offset() < best->valuation)) best = Pivot{i, j, e.offset()};
    }
  }
  if (!best) {
    if (all_exact_zero) throw SingularError("smith: determinant is exactly zero");
    throw PrecisionError("smith: remaining block is zero to precision; pivot not certifiable");
  }
  if (uncertain <= best->valuation) {
    throw PrecisionError("smith: ambiguous pivot, an entry known only mod t^" + std::to_string(uncertain) +
                         " may undercut valuation " + std::to_string(best->valuation));
  }
  return *best;
}

}  // namespace

SmithForm smith_over_power_series(const SeriesMatrix& m, std::int64_t working_precision) {
  if (!m.is_square()) throw ShapeError("smith: matrix is not square");
  if (!m.is_power_series()) throw InputError("smith: entries must lie in K[[t]]");
  const Field& F = m.field();
  const std::size_t n = m.rows();

  Grid a = to_grid(m);
  Grid u = identity_grid(F, n);      // M = U * A_current * V throughout
  Grid v = identity_grid(F, n);
  Grid v_inv = identity_grid(F, n);  // maintained as V^-1
  std::vector<std::int64_t> exponents;
  exponents.reserve(n);

  for (std::size_t k = 0; k < n; ++k) {
    const Pivot p = choose_pivot(a, k);
    if (p.row != k) {
      std::swap(a[p.row], a[k]);
      swap_cols(u, p.row, k);
    }
    if (p.col != k) {
      swap_cols(a, p.col, k);
      std::swap(v[p.col], v[k]);
      swap_cols(v_inv, p.col, k);
    }

    const LaurentSeries unit = a[k][k].shift(-p.valuation);
    std::int64_t reach = working_precision;
    if (!unit.is_exact()) reach = std::min(reach, unit.order());
    const LaurentSeries unit_inv = invert_unit(unit, reach);

    // Row operations: row_i -= c * row_k; compensate U with col_k += c * col_i.
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      const LaurentSeries c = a[i][k].shift(-p.valuation) * unit_inv;
      for (std::size_t j = k + 1; j < n; ++j)
        if (!a[k][j].is_zero()) a[i][j] -= c * a[k][j];
      a[i][k] = LaurentSeries(F);
      add_col(u, k, i, c);
    }
    // Column operations: col_j -= c * col_k; compensate V with row_k += c * row_j.
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a[k][j].is_zero()) continue;
      const LaurentSeries c = a[k][j].shift(-p.valuation) * unit_inv;
      a[k][j] = LaurentSeries(F);
      add_col(v_inv, j, k, -c);
      add_row(v, k, j, c);
    }
    // a[k][k] = t^v * unit: move the unit into U.
    for (auto& row : u) row[k] = row[k] * unit;
    a[k][k] = LaurentSeries::monomial(F, F.one(), p.valuation);
    exponents.push_back(p.valuation);
  }

  return SmithForm{from_grid(F, u), std::move(exponents), from_grid(F, v), from_grid(F, v_inv)};
}

CimDecomposition cim_decompose(const SeriesMatrix& g, std::int64_t precision, int max_doublings) {
  if (!g.is_square()) throw ShapeError("cim_decompose: matrix is not square");
  if (g.rows() == 0) return CimDecomposition{g, {}, g, precision};
  if (g.is_exact() && g.rows() <= 8 && g.determinant().is_zero()) {
    throw SingularError("cim_decompose: determinant is exactly zero");
  }
  const std::int64_t min_val = g.min_valuation();
  const std::int64_t shift = min_val == LaurentSeries::kInfinity ? 0 : std::max<std::int64_t>(0, -min_val);
  const SeriesMatrix shifted = g.shift(shift);

  std::int64_t working = std::max<std::int64_t>(precision, 1) + shift + 4;
  std::string last_failure;
  for (int attempt = 0; attempt <= std::max(max_doublings, 0); ++attempt) {
    SmithForm sf = smith_over_power_series(shifted, working);
    CimDecomposition dec;
    dec.h1 = std::move(sf.u);
    dec.weights.reserve(sf.exponents.size());
    for (auto e : sf.exponents) dec.weights.push_back(e - shift);
    dec.h2 = std::move(sf.v_inverse);
    dec.precision = precision;
    CimVerdict verdict = verify_cim(g, dec);
    if (verdict.pass) return dec;
    last_failure = verdict.reason;
    working *= 2;
  }
  throw PrecisionError("cim_decompose: decomposition does not verify mod t^" + std::to_string(precision) + " (" +
                       last_failure + ")");
}

CimVerdict verify_cim(const SeriesMatrix& g, const CimDecomposition& dec) {
  CimVerdict verdict;
  const std::size_t n = g.rows();
  auto fail = [&](std::string why) {
    verdict.pass = false;
    verdict.reason = std::move(why);
    return verdict;
  };
  if (!g.is_square() || dec.h1.rows() != n || !dec.h1.is_square() || dec.h2.rows() != n || !dec.h2.is_square() ||
      dec.weights.size() != n) {
    return fail("shape mismatch");
  }
  if (!(dec.h1.field() == g.field()) || !(dec.h2.field() == g.field())) return fail("field mismatch");
  if (!dec.h1.is_power_series() || !dec.h2.is_power_series()) return fail("h1 or h2 has entries outside K[[t]]");
  try {
    if (!dec.h1.constant_term().is_invertible()) return fail("h1(0) is not invertible");
    if (!dec.h2.constant_term().is_invertible()) return fail("h2(0) is not invertible");
  } catch (const PrecisionError& e) {
    return fail(std::string("constant term not certified: ") + e.what());
  }

  const std::int64_t w_min = n == 0 ? 0 : *std::min_element(dec.weights.begin(), dec.weights.end());
  const SeriesMatrix middle = SeriesMatrix::diagonal_monomials(g.field(), dec.weights);
  std::int64_t inv_order = dec.precision - std::min<std::int64_t>(0, w_min) + 1;
  for (int attempt = 0; attempt < 3; ++attempt) {
    SeriesMatrix h2_inv;
    try {
      h2_inv = invert(dec.h2, inv_order);
    } catch (const Error& e) {
      return fail(std::string("cannot invert h2: ") + e.what());
    }
    verdict.residual = g - dec.h1 * middle * h2_inv;
    bool precise_enough = true;
    bool nonzero = false;
    for (const auto& e : verdict.residual.entries()) {
      if (e.has_certified_valuation() && e.offset() < dec.precision) nonzero = true;
      if (!e.is_exact() && e.order() < dec.precision) precise_enough = false;
    }
    if (nonzero) return fail("residual is nonzero below t^" + std::to_string(dec.precision));
    if (precise_enough) {
      verdict.pass = true;
      verdict.reason.clear();
      return verdict;
    }
    inv_order *= 2;
  }
  return fail("residual not certified to t^" + std::to_string(dec.precision) + " (insufficient factor precision)");
}

}  // namespace subrank
