#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "subrank/field.hpp"

namespace subrank {

/// Exact floor(sqrt(n)) for n >= 0.
BigInt isqrt(const BigInt& n);

/// n_1...n_d - s^d + sum 2s(n_i - s) + r(1 + d(r-1) + sum(n_i - r)) with s = floor(r/d):
/// an upper bound on the dimension of the tensors of border subrank at least r.
/// Throws InputError unless d >= 2, dims has d entries >= 1 and r >= 0.
BigInt formula_dim_upper(std::size_t d, const std::vector<std::size_t>& dims, std::size_t r);

/// n^d - (r/d)^d + r(2(n - r/d) + d(n-1) + 1). Throws InputError unless d divides r.
BigInt formula_equal_dims_simplified(std::size_t d, std::size_t n, std::size_t r);

/// Largest r in [0, n] with formula_dim_upper(d, (n,...,n), r) >= n^d (exhaustive scan).
std::size_t border_subrank_generic_upper(std::size_t d, std::size_t n);

/// floor(sqrt(4n)) - 3, or 0 when that is below 1.
std::size_t d3_lower(std::size_t n);

/// [3 floor(sqrt(n/3 + 1/4) - 1/2), floor(sqrt(3n - 2))]; the upper end is the generic subrank.
std::pair<std::size_t, std::size_t> dmz_interval(std::size_t n);

/// floor(sqrt(3n - 2)).
std::size_t generic_subrank(std::size_t n);

enum class BoundFormula { DimUpper, EqualDimsSimplified, GenericBorderUpper, D3Lower, DmzInterval, MaxLocus };

struct BoundReport {
  std::size_t d = 0;
  std::vector<std::size_t> dims;
  std::size_t r = 0;
  std::size_t s = 0;
  BigInt value;
  BoundFormula formula = BoundFormula::DimUpper;
};

/// formula_dim_upper packaged with its parameters (s recomputed from r and d).
BoundReport dim_upper_report(std::size_t d, const std::vector<std::size_t>& dims, std::size_t r);

struct CrossoverRow {
  std::size_t n = 0;
  std::size_t d3_lower = 0;
  std::size_t generic_subrank = 0;
  std::size_t dmz_lo = 0;
  std::size_t border_upper = 0;                 // d = 3
  std::vector<std::size_t> border_upper_higher;  // d = 4, ..., d_max
  bool excess = false;                           // d3_lower > generic_subrank
};

struct CrossoverTable {
  std::size_t d_max = 3;
  std::vector<CrossoverRow> rows;
  std::optional<std::size_t> first_excess;
};

/// Rows for n in [n_min, n_max] (empty when n_min > n_max). Requires d_max >= 3.
CrossoverTable crossover_scan(std::size_t n_max, std::size_t n_min = 1, std::size_t d_max = 3);

void write_crossover_csv(const CrossoverTable& table, std::ostream& out);

struct MaxLocusBounds {
  mpq_class lower;  // (2n^3 + 3n^2 - 2n - 3)/3
  mpq_class upper;  // 26/27 n^3 + 13/3 n^2 - 2n
};

/// Throws InputError unless 3 divides n.
MaxLocusBounds max_locus_bounds(std::size_t n);

}  // namespace subrank
