#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subrank/series_matrix.hpp"

namespace subrank {

/// M = U * diag(t^e_1, ..., t^e_n) * V  (mod t^N), with U(0), V(0) invertible and
/// e weakly increasing. `v_inverse` is V^-1, accumulated alongside V.
struct SmithForm {
  SeriesMatrix u;
  std::vector<std::int64_t> exponents;
  SeriesMatrix v;
  SeriesMatrix v_inverse;
};

/// Smith normal form of a square matrix with entries in K[[t]].
///
/// Pivot rule: the entry of minimal valuation in the remaining block, ties broken in
/// row-major order. Unit inverses are carried to `working_precision`; the factors then
/// satisfy M = U diag(t^e) V modulo t^(working_precision - max e).
/// Throws SingularError when the remaining block is exactly zero and PrecisionError
/// when a zero-to-precision entry could undercut the chosen pivot.
SmithForm smith_over_power_series(const SeriesMatrix& m, std::int64_t working_precision = kDefaultPrecision);

/// g(t) = h1(t) * diag(t^weights) * h2(t)^-1  mod t^precision, with h1, h2 in GL_n(K[[t]]).
struct CimDecomposition {
  SeriesMatrix h1;
  std::vector<std::int64_t> weights;
  SeriesMatrix h2;
  std::int64_t precision = kDefaultPrecision;
};

/// Cartan-Iwahori-Matsumoto decomposition of g in GL_n(K((t))): clear poles with t^a,
/// take the Smith form over K[[t]], shift the middle factor back by t^-a. The working
/// precision is doubled (at most `max_doublings` times) until the result verifies at `precision`.
CimDecomposition cim_decompose(const SeriesMatrix& g, std::int64_t precision = kDefaultPrecision,
                               int max_doublings = 5);

struct CimVerdict {
  bool pass = false;
  std::string reason;     // empty on Pass
  SeriesMatrix residual;  // g - h1 diag(t^w) h2^-1
};

/// Residual check of a decomposition; never throws on mathematical failure.
CimVerdict verify_cim(const SeriesMatrix& g, const CimDecomposition& dec);

}  // namespace subrank
