#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "subrank/field.hpp"
#include "subrank/one_param_subgroup.hpp"
#include "subrank/tensor.hpp"

namespace subrank {

/// A grid cell with 1-based coordinates (j_1, ..., j_d).
using Cell = std::vector<std::size_t>;
using CellSet = std::set<Cell>;

Index to_index(const Cell& cell);
Cell to_cell(const Index& idx);

/// Weakly increasing integer weights a_i1 <= ... <= a_in_i per factor.
struct WeightProfile {
  std::vector<std::size_t> dims;
  std::vector<std::vector<BigInt>> weights;

  std::size_t order() const { return dims.size(); }
  bool is_weakly_increasing() const;
  BigInt weight_sum(const Cell& cell) const;
  /// The diagonal one-parameter subgroup in the standard basis.
  OneParamSubgroup subgroup(const Field& field) const;

  friend bool operator==(const WeightProfile&, const WeightProfile&) = default;
};

/// a_1j = a_2j = 2^j; a_3l = -2^(r-l+2) for l <= r and 0 for l > r.
/// Throws InputError unless 1 <= r <= n.
WeightProfile build_weight_profile(std::size_t n, std::size_t r);

/// P = {cells with weight sum <= 0} and its zero locus.
struct PyramidPattern {
  std::vector<std::size_t> dims;
  std::vector<Cell> cells;      // row-major order
  std::vector<Cell> zero_set;   // row-major order

  bool contains(const Cell& c) const;
  std::size_t size() const { return cells.size(); }
};

PyramidPattern build_pyramid(const WeightProfile& profile);

/// True when P = {(j,k,l) : l <= r, j,k <= r-l+1} and the zero set is {(r-l+1, r-l+1, l)}.
bool matches_staircase(const PyramidPattern& p, std::size_t r);

/// r(r+1)(2r+1)/6.
std::size_t staircase_size(std::size_t r);

/// 4n >= (r+3)^2.
bool fit_condition_holds(std::size_t n, std::size_t r);

/// A planted full-rank block in layer l = r - s. Even s: rows [start, end] x cols [1, s+1];
/// odd s: rows [1, s+1] x cols [start, end]. All coordinates 1-based.
struct Placement {
  enum class Parity { Even, Odd };
  Parity parity;
  std::size_t s;
  std::size_t layer;
  std::size_t start;
  std::size_t end;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct PlantedTensor {
  Tensor t_tilde;
  Tensor s;  // ones on the zero set of the pyramid
  std::vector<Placement> placements;
};

/// The diagonal tensor S with ones at (r-l+1, r-l+1, l), l in [r], in n x n x n.
Tensor build_diagonal_limit(std::size_t n, std::size_t r, const Field& field);

/// Greedy deterministic placement of the planted blocks (identity blocks unless
/// `random_blocks` supplies a generator for random invertible ones).
/// Throws PlacementError if 4n < (r+3)^2 or a block would leave [1, n].
PlantedTensor build_T_tilde(std::size_t n, std::size_t r, const Field& field,
                            std::mt19937_64* random_blocks = nullptr);

/// Rows indexed by P, columns by (factor, a, b) with a <= b (factor 1 block first, each
/// in lexicographic (a, b) order); entry = the P-restriction of E_ab applied to T~ along that factor.
Matrix jacobian_matrix(const Tensor& t_tilde, const PyramidPattern& p);

/// Exact rank of jacobian_matrix over `field` (64-bit kernel for word-size primes).
std::size_t jacobian_dominance_rank(const Tensor& t_tilde, const PyramidPattern& p, const Field& field);

enum class Verdict { Certified, Refuted, Inconclusive };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct DegenerationCertificate {
  std::size_t n = 0;
  std::size_t r = 0;
  WeightProfile profile;
  Tensor s;
  Tensor t_tilde;
  std::vector<Placement> placements;
  bool limit_check = false;
  bool s_recognized = false;
  std::size_t jacobian_rank = 0;
  std::size_t pyramid_size = 0;
  Field field = Field::rationals();
  std::vector<std::string> primes_tried;
  bool random_blocks = false;
  Verdict verdict = Verdict::Inconclusive;
};

struct CertifyOptions {
  /// Fixed field (Q or a given prime). When unset a random 62-bit prime is drawn from `seed`.
  std::optional<Field> field;
  std::uint64_t seed = 1;
  /// Additional primes tried after a rank deficit before random blocks are tried.
  int max_prime_retries = 2;
  /// Random invertible block attempts after identity blocks fail on every prime.
  int max_block_retries = 2;
};

/// Runs profile -> pyramid -> T~ -> limit check -> recognizer -> Jacobian rank.
/// `r` defaults to floor(sqrt(4n)) - 3. Throws InputError for r < 1 or r > n and
/// PlacementError when (n, r) violates the fit condition.
DegenerationCertificate certify_generic_lower_bound(std::size_t n, std::optional<std::size_t> r = std::nullopt,
                                                    const CertifyOptions& options = {});

/// Re-derives every clause of a stored certificate from scratch, computing the
/// Jacobian rank over `fresh_field`. Returns the names of failed clauses.
std::vector<std::string> verify_certificate(const DegenerationCertificate& cert, const Field& fresh_field);

/// Either [s]^d is contained in P, or P is covered by the d(s-1) slices {x_i = c}, c < s.
struct DichotomyResult {
  struct Slice {
    std::size_t mode;
    std::size_t value;  // 1-based
    friend bool operator==(const Slice&, const Slice&) = default;
  };
  bool hypercube = false;
  std::vector<Cell> cube;    // [s]^d when hypercube
  std::vector<Slice> cover;  // when !hypercube
};

bool is_downward_closed(const CellSet& p);
/// Throws InputError if P is not downward closed.
DichotomyResult hypercube_dichotomy(const CellSet& p, std::size_t s, std::size_t d);
bool cover_covers(const std::vector<DichotomyResult::Slice>& cover, const CellSet& p);

/// Exact minimum number of coordinate slices covering `support` (branch and bound).
/// Throws InputError when the search guard is exceeded (a dimension above 8 or d above 4).
std::size_t min_slice_cover(const CellSet& support, const std::vector<std::size_t>& dims);

}  // namespace subrank
