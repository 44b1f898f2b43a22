#include "subrank/bounds.hpp"

#include <stdexcept>
#include <string>

#include "subrank/errors.hpp"

namespace subrank {

namespace {

__extension__ using i128 = __int128;

BigInt big(std::size_t v) { return BigInt(static_cast<unsigned long>(v)); }

BigInt pow_ui(const BigInt& base, std::size_t e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

std::size_t to_size(const BigInt& v) { return static_cast<std::size_t>(v.get_ui()); }

// Same formula in 128-bit arithmetic, valid while n^d stays far below 2^127.
i128 dim_upper_equal_i128(std::size_t d, std::size_t n, std::size_t r) {
  const auto N = static_cast<i128>(n);
  const auto R = static_cast<i128>(r);
  const auto D = static_cast<i128>(d);
  const i128 s = R / D;
  i128 nd = 1;
  i128 sd = 1;
  for (std::size_t i = 0; i < d; ++i) {
    nd *= N;
    sd *= s;
  }
  return nd - sd + D * 2 * s * (N - s) + R * (1 + D * (R - 1) + D * (N - R));
}

bool fits_i128(std::size_t d, std::size_t n) {
  return mpz_sizeinbase(pow_ui(big(n), d).get_mpz_t(), 2) < 100;
}

}  // namespace

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw InputError("square root of a negative integer");
  BigInt out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

BigInt formula_dim_upper(std::size_t d, const std::vector<std::size_t>& dims, std::size_t r) {
  if (d < 2) throw InputError("order d must be at least 2");
  if (dims.size() != d) throw InputError("expected " + std::to_string(d) + " dimensions");
  for (std::size_t n : dims) {
    if (n < 1) throw InputError("dimensions must be at least 1");
  }
  const BigInt R = big(r);
  const BigInt D = big(d);
  const BigInt s = big(r / d);
  BigInt prod = 1;
  BigInt slice_terms = 0;
  BigInt rank_terms = 0;
  for (std::size_t n : dims) {
    prod *= big(n);
    slice_terms += 2 * s * (big(n) - s);
    rank_terms += big(n) - R;
  }
  return prod - pow_ui(s, d) + slice_terms + R * (1 + D * (R - 1) + rank_terms);
}

BigInt formula_equal_dims_simplified(std::size_t d, std::size_t n, std::size_t r) {
  if (d < 2) throw InputError("order d must be at least 2");
  if (r % d != 0) throw InputError("r = " + std::to_string(r) + " is not a multiple of d = " + std::to_string(d));
  const BigInt N = big(n);
  const BigInt R = big(r);
  const BigInt q = big(r / d);
  return pow_ui(N, d) - pow_ui(q, d) + R * (2 * (N - q) + big(d) * (N - 1) + 1);
}

std::size_t border_subrank_generic_upper(std::size_t d, std::size_t n) {
  if (d < 2) throw InputError("order d must be at least 2");
  if (n < 1) throw InputError("n must be at least 1");
  if (fits_i128(d, n)) {
    i128 nd = 1;
    for (std::size_t i = 0; i < d; ++i) nd *= static_cast<i128>(n);
    for (std::size_t r = n + 1; r-- > 0;) {
      if (dim_upper_equal_i128(d, n, r) >= nd) return r;
    }
    return 0;
  }
  const std::vector<std::size_t> dims(d, n);
  const BigInt nd = pow_ui(big(n), d);
  for (std::size_t r = n + 1; r-- > 0;) {
    if (formula_dim_upper(d, dims, r) >= nd) return r;
  }
  return 0;
}

std::size_t d3_lower(std::size_t n) {
  const BigInt root = isqrt(4 * big(n));
  return root <= 3 ? 0 : to_size(root) - 3;
}

std::size_t generic_subrank(std::size_t n) {
  if (n < 1) throw InputError("n must be at least 1");
  return to_size(isqrt(3 * big(n) - 2));
}

std::pair<std::size_t, std::size_t> dmz_interval(std::size_t n) {
  if (n < 1) throw InputError("n must be at least 1");
  // floor(sqrt(n/3 + 1/4) - 1/2) is the largest m >= 0 with 3m(m+1) <= n.
  const BigInt N = big(n);
  BigInt m = (isqrt(12 * N + 9) - 3) / 6;
  while (3 * (m + 1) * (m + 2) <= N) ++m;
  while (m > 0 && 3 * m * (m + 1) > N) --m;
  return {to_size(3 * m), generic_subrank(n)};
}

BoundReport dim_upper_report(std::size_t d, const std::vector<std::size_t>& dims, std::size_t r) {
  BoundReport rep;
  rep.d = d;
  rep.dims = dims;
  rep.r = r;
  rep.value = formula_dim_upper(d, dims, r);
  rep.s = r / d;
  rep.formula = BoundFormula::DimUpper;
  return rep;
}

CrossoverTable crossover_scan(std::size_t n_max, std::size_t n_min, std::size_t d_max) {
  if (d_max < 3) throw InputError("crossover scan needs d >= 3");
  CrossoverTable table;
  table.d_max = d_max;
  for (std::size_t n = std::max<std::size_t>(n_min, 1); n <= n_max; ++n) {
    CrossoverRow row;
    row.n = n;
    row.d3_lower = d3_lower(n);
    const auto [lo, hi] = dmz_interval(n);
    row.generic_subrank = hi;
    row.dmz_lo = lo;
    row.border_upper = border_subrank_generic_upper(3, n);
    for (std::size_t d = 4; d <= d_max; ++d) row.border_upper_higher.push_back(border_subrank_generic_upper(d, n));
    row.excess = row.d3_lower > row.generic_subrank;
    if (row.excess && !table.first_excess) table.first_excess = n;
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_crossover_csv(const CrossoverTable& table, std::ostream& out) {
  out << "n,d3_lower,generic_subrank,dmz_lo,border_upper,excess_flag";
  for (std::size_t d = 4; d <= table.d_max; ++d) out << ",border_upper_d" << d;
  out << '\n';
  for (const CrossoverRow& row : table.rows) {
    out << row.n << ',' << row.d3_lower << ',' << row.generic_subrank << ',' << row.dmz_lo << ','
        << row.border_upper << ',' << (row.excess ? "true" : "false");
    for (std::size_t v : row.border_upper_higher) out << ',' << v;
    out << '\n';
  }
}

MaxLocusBounds max_locus_bounds(std::size_t n) {
  if (n % 3 != 0) throw InputError("n = " + std::to_string(n) + " is not a multiple of 3");
  const mpq_class N(big(n));
  MaxLocusBounds b;
  b.lower = (2 * N * N * N + 3 * N * N - 2 * N - 3) / 3;
  b.upper = mpq_class(26, 27) * N * N * N + mpq_class(13, 3) * N * N - 2 * N;
  b.lower.canonicalize();
  b.upper.canonicalize();
  if (n > 0 && b.upper != mpq_class(formula_dim_upper(3, {n, n, n}, n))) {
    throw std::logic_error("closed-form upper bound disagrees with the general formula");
  }
  return b;
}

}  // namespace subrank
