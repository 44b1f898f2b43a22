#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "subrank/bounds.hpp"
#include "subrank/errors.hpp"

namespace subrank {
namespace {

// Plain 64-bit evaluation of the dimension bound on equal dimensions.
long long dim_upper_i64(long long d, long long n, long long r) {
  long long nd = 1, sd = 1;
  const long long s = r / d;
  for (long long i = 0; i < d; ++i) {
    nd *= n;
    sd *= s;
  }
  return nd - sd + d * 2 * s * (n - s) + r * (1 + d * (r - 1) + d * (n - r));
}

long long border_upper_i64(long long d, long long n) {
  long long nd = 1;
  for (long long i = 0; i < d; ++i) nd *= n;
  long long best = 0;
  for (long long r = 0; r <= n; ++r)
    if (dim_upper_i64(d, n, r) >= nd) best = r;
  return best;
}

std::vector<std::size_t> cube(std::size_t d, std::size_t n) { return std::vector<std::size_t>(d, n); }

TEST(DimUpper, Examples) {
  EXPECT_EQ(formula_dim_upper(3, cube(3, 9), 3), 851);
  EXPECT_EQ(formula_dim_upper(3, cube(3, 3), 3), 59);
  EXPECT_EQ(formula_dim_upper(3, {2, 5, 7}, 0), 70);
  EXPECT_EQ(formula_dim_upper(4, {3, 3, 3, 3}, 0), 81);
  EXPECT_THROW(formula_dim_upper(1, {3}, 1), InputError);
  EXPECT_THROW(formula_dim_upper(3, {3, 3}, 1), InputError);
  EXPECT_THROW(formula_dim_upper(3, {3, 0, 3}, 1), InputError);
}

TEST(DimUpper, UnequalDimsByHand) {
  // dims (2,3,4), r = 3, s = 1: 24 - 1 + 2(1 + 2 + 3) + 3(1 + 6 + (-1 + 0 + 1)) = 56
  EXPECT_EQ(formula_dim_upper(3, {2, 3, 4}, 3), 56);
}

TEST(DimUpper, Report) {
  const auto rep = dim_upper_report(3, cube(3, 9), 7);
  EXPECT_EQ(rep.s, 2u);
  EXPECT_EQ(rep.value, formula_dim_upper(3, cube(3, 9), 7));
  EXPECT_EQ(rep.formula, BoundFormula::DimUpper);
}

TEST(EqualDims, Examples) {
  EXPECT_EQ(formula_equal_dims_simplified(3, 9, 3), 851);
  EXPECT_EQ(formula_equal_dims_simplified(3, 7, 0), 343);
  EXPECT_EQ(formula_equal_dims_simplified(4, 8, 8), formula_dim_upper(4, cube(4, 8), 8));
  EXPECT_THROW(formula_equal_dims_simplified(3, 9, 4), InputError);
}

TEST(EqualDimsProperty, AgreesWithGeneralFormulaOnGrid) {
  for (std::size_t d = 2; d <= 5; ++d)
    for (std::size_t n = 1; n <= 50; ++n)
      for (std::size_t r = 0; r <= n; r += d)
        ASSERT_EQ(formula_equal_dims_simplified(d, n, r), formula_dim_upper(d, cube(d, n), r))
            << d << " " << n << " " << r;
}

TEST(DimUpperProperty, MatchesSixtyFourBitEvaluation) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const long long d = 2 + static_cast<long long>(rng() % 3);
    const long long n = 1 + static_cast<long long>(rng() % 300);
    const long long r = static_cast<long long>(rng() % (n + 1));
    EXPECT_EQ(formula_dim_upper(d, cube(d, n), r), BigInt(std::to_string(dim_upper_i64(d, n, r))));
  }
}

TEST(BorderUpper, Examples) {
  EXPECT_EQ(border_subrank_generic_upper(3, 1000), 359u);
  EXPECT_EQ(border_subrank_generic_upper(3, 1000), static_cast<std::size_t>(border_upper_i64(3, 1000)));
  EXPECT_EQ(border_subrank_generic_upper(3, 9), 9u);
  for (std::size_t d = 2; d <= 6; ++d) EXPECT_EQ(border_subrank_generic_upper(d, 1), 1u);
  // s = 119 at the threshold: r = 359 passes, r = 360 fails.
  EXPECT_GE(formula_dim_upper(3, cube(3, 1000), 359), BigInt(1000000000));
  EXPECT_LT(formula_dim_upper(3, cube(3, 1000), 360), BigInt(1000000000));
}

TEST(BorderUpperProperty, MatchesIndependentScan) {
  for (long long d = 2; d <= 4; ++d)
    for (long long n = 1; n <= 120; ++n)
      ASSERT_EQ(border_subrank_generic_upper(d, n), static_cast<std::size_t>(border_upper_i64(d, n))) << d << " " << n;
}

TEST(BorderUpperProperty, GrowthIsSquareRootForOrderThree) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 1 + rng() % 100000;
    const double ratio = static_cast<double>(border_subrank_generic_upper(3, n)) / std::sqrt(static_cast<double>(n));
    EXPECT_LE(ratio, 12.0) << n;
  }
  const double at_max = static_cast<double>(border_subrank_generic_upper(3, 100000)) / std::sqrt(100000.0);
  EXPECT_GT(at_max, 5.0);
  EXPECT_LE(at_max, 12.0);
}

TEST(D3Lower, Examples) {
  EXPECT_EQ(d3_lower(9), 3u);
  EXPECT_EQ(d3_lower(200), 25u);
  EXPECT_EQ(d3_lower(4), 1u);
  EXPECT_EQ(d3_lower(3), 0u);
  EXPECT_EQ(d3_lower(1), 0u);
}

TEST(Isqrt, Examples) {
  EXPECT_EQ(isqrt(BigInt(0)), 0);
  EXPECT_EQ(isqrt(BigInt(24)), 4);
  EXPECT_EQ(isqrt(BigInt(25)), 5);
  const BigInt big = BigInt(1) << 200;
  EXPECT_EQ(isqrt(big), BigInt(1) << 100);
  EXPECT_EQ(isqrt(big - 1), (BigInt(1) << 100) - 1);
}

TEST(Dmz, Examples) {
  EXPECT_EQ(dmz_interval(9), (std::pair<std::size_t, std::size_t>{3, 5}));
  EXPECT_EQ(dmz_interval(200).second, 24u);
  EXPECT_EQ(dmz_interval(1), (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_EQ(generic_subrank(200), 24u);
}

// lo = 3m where m <= sqrt(n/3 + 1/4) - 1/2 < m + 1, checked over exact rationals.
TEST(DmzProperty, EndpointsSatisfyTheirDefiningInequalities) {
  for (std::size_t n = 1; n <= 20000; ++n) {
    const auto [lo, hi] = dmz_interval(n);
    ASSERT_EQ(lo % 3, 0u);
    const mpq_class m(static_cast<long>(lo / 3));
    const mpq_class x = mpq_class(static_cast<long>(n), 3) + mpq_class(1, 4);
    const mpq_class half(1, 2);
    ASSERT_LE((m + half) * (m + half), x) << n;
    ASSERT_LT(x, (m + 1 + half) * (m + 1 + half)) << n;
    const long h = static_cast<long>(hi);
    const long target = 3 * static_cast<long>(n) - 2;
    ASSERT_LE(h * h, target);
    ASSERT_GT((h + 1) * (h + 1), target);
    ASSERT_LE(lo, hi);
  }
}

TEST(Crossover, Rows) {
  const auto table = crossover_scan(200);
  ASSERT_EQ(table.rows.size(), 200u);
  const auto& r9 = table.rows[8];
  EXPECT_EQ(r9.n, 9u);
  EXPECT_EQ(r9.d3_lower, 3u);
  EXPECT_EQ(r9.generic_subrank, 5u);
  EXPECT_EQ(r9.dmz_lo, 3u);
  EXPECT_EQ(r9.border_upper, 9u);
  EXPECT_FALSE(r9.excess);
  const auto& r200 = table.rows[199];
  EXPECT_EQ(r200.d3_lower, 25u);
  EXPECT_EQ(r200.generic_subrank, 24u);
  EXPECT_EQ(r200.dmz_lo, 21u);
  EXPECT_EQ(r200.border_upper, 158u);
  EXPECT_TRUE(r200.excess);
  ASSERT_TRUE(table.first_excess);
  EXPECT_EQ(*table.first_excess, 133u);
}

TEST(Crossover, RangeAndHigherOrders) {
  const auto empty = crossover_scan(3, 10);
  EXPECT_TRUE(empty.rows.empty());
  EXPECT_FALSE(empty.first_excess);
  const auto t = crossover_scan(200, 200, 5);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].border_upper_higher, (std::vector<std::size_t>{67, border_subrank_generic_upper(5, 200)}));
  EXPECT_THROW(crossover_scan(10, 1, 2), InputError);
}

TEST(Crossover, Csv) {
  std::ostringstream out;
  write_crossover_csv(crossover_scan(9, 9), out);
  EXPECT_EQ(out.str(), "n,d3_lower,generic_subrank,dmz_lo,border_upper,excess_flag\n9,3,5,3,9,false\n");
}

TEST(CrossoverProperty, LowerNeverExceedsBorderUpper) {
  const auto table = crossover_scan(10000);
  for (const auto& row : table.rows) {
    ASSERT_LE(row.d3_lower, row.border_upper) << row.n;
    ASSERT_LE(row.generic_subrank, row.border_upper) << row.n;
    ASSERT_EQ(row.excess, row.d3_lower > row.generic_subrank);
    ASSERT_LE(row.border_upper, row.n);
  }
}

TEST(MaxLocus, Examples) {
  const auto b = max_locus_bounds(3);
  EXPECT_EQ(b.upper, 59);
  EXPECT_EQ(b.lower, 24);
  EXPECT_EQ(b.upper, mpq_class(formula_dim_upper(3, cube(3, 3), 3)));
  EXPECT_THROW(max_locus_bounds(4), InputError);
}

TEST(MaxLocusProperty, LowerBelowUpper) {
  for (std::size_t n = 3; n <= 99; n += 3) {
    const auto b = max_locus_bounds(n);
    EXPECT_LE(b.lower, b.upper) << n;
    EXPECT_EQ(b.upper, mpq_class(formula_dim_upper(3, cube(3, n), n)));
  }
}

}  // namespace
}  // namespace subrank
