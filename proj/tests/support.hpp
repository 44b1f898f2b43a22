#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "subrank/field.hpp"
#include "subrank/laurent_series.hpp"
#include "subrank/series_matrix.hpp"

namespace subrank::testing {

inline const Field& Q() {
  static const Field q = Field::rationals();
  return q;
}

inline const Field& F101() {
  static const Field f = Field::prime_field(101);
  return f;
}

inline const Field& Fbig() {
  static const Field f = Field::prime_field(BigInt("4611686018427387847"));
  return f;
}

inline std::vector<Field> fields() { return {Q(), F101(), Fbig()}; }

inline Scalar s(long v) { return Scalar(v); }

/// Exact Laurent polynomial from integer coefficients starting at t^val.
inline LaurentSeries poly(const Field& f, std::int64_t val, std::vector<long> coeffs) {
  std::vector<Scalar> c;
  for (long x : coeffs) c.push_back(f.from_int(x));
  return LaurentSeries::polynomial(f, val, std::move(c));
}

inline LaurentSeries mono(const Field& f, long c, std::int64_t e) { return LaurentSeries::monomial(f, f.from_int(c), e); }

inline LaurentSeries trunc_series(const Field& f, std::int64_t val, std::vector<long> coeffs, std::int64_t order) {
  std::vector<Scalar> c;
  for (long x : coeffs) c.push_back(f.from_int(x));
  return LaurentSeries::truncated(f, val, std::move(c), order);
}

inline SeriesMatrix smat(const Field& f, std::size_t n, std::size_t m, std::vector<LaurentSeries> e) {
  return SeriesMatrix(f, n, m, std::move(e));
}

/// The curve [[t^-1, 0], [-t^-2, t]].
inline SeriesMatrix sl2_curve(const Field& f) {
  return smat(f, 2, 2, {mono(f, 1, -1), LaurentSeries::zero(f), mono(f, -1, -2), mono(f, 1, 1)});
}

inline std::string data_path(const std::string& name) { return std::string(SUBRANK_DATA_DIR) + "/" + name; }

}  // namespace subrank::testing
