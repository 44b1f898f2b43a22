#include "subrank/degeneration.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "subrank/errors.hpp"

namespace subrank {

Index to_index(const Cell& cell) {
  Index idx(cell.size());
  for (std::size_t i = 0; i < cell.size(); ++i) idx[i] = cell[i] - 1;
  return idx;
}

Cell to_cell(const Index& idx) {
  Cell c(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) c[i] = idx[i] + 1;
  return c;
}

bool WeightProfile::is_weakly_increasing() const {
  for (const auto& w : weights) {
    for (std::size_t j = 1; j < w.size(); ++j) {
      if (w[j] < w[j - 1]) return false;
    }
  }
  return true;
}

BigInt WeightProfile::weight_sum(const Cell& cell) const {
  BigInt s = 0;
  for (std::size_t i = 0; i < cell.size(); ++i) s += weights[i][cell[i] - 1];
  return s;
}

OneParamSubgroup WeightProfile::subgroup(const Field& field) const {
  return OneParamSubgroup::standard(field, weights);
}

WeightProfile build_weight_profile(std::size_t n, std::size_t r) {
  if (r < 1) throw InputError("r must be at least 1");
  if (r > n) throw InputError("r = " + std::to_string(r) + " exceeds n = " + std::to_string(n));
  WeightProfile p;
  p.dims = {n, n, n};
  p.weights.assign(3, std::vector<BigInt>(n));
  for (std::size_t j = 1; j <= n; ++j) {
    BigInt pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 2, j);
    p.weights[0][j - 1] = pow;
    p.weights[1][j - 1] = pow;
    if (j <= r) {
      mpz_ui_pow_ui(pow.get_mpz_t(), 2, r - j + 2);
      p.weights[2][j - 1] = -pow;
    }
  }
  return p;
}

bool PyramidPattern::contains(const Cell& c) const {
  return std::binary_search(cells.begin(), cells.end(), c);
}

PyramidPattern build_pyramid(const WeightProfile& profile) {
  if (profile.order() != 3) throw InputError("pyramid enumeration needs an order-3 profile");
  if (!profile.is_weakly_increasing()) throw InputError("weight profile is not weakly increasing");
  PyramidPattern p;
  p.dims = profile.dims;
  const auto& a = profile.weights;
  BigInt s;
  for (std::size_t j = 1; j <= p.dims[0]; ++j) {
    for (std::size_t k = 1; k <= p.dims[1]; ++k) {
      BigInt ab = a[0][j - 1] + a[1][k - 1];
      for (std::size_t l = 1; l <= p.dims[2]; ++l) {
        s = ab + a[2][l - 1];
        const int sign = sgn(s);
        if (sign > 0) break;  // weights increase in l
        p.cells.push_back({j, k, l});
        if (sign == 0) p.zero_set.push_back({j, k, l});
      }
    }
  }
  return p;
}

bool matches_staircase(const PyramidPattern& p, std::size_t r) {
  std::vector<Cell> cells;
  std::vector<Cell> zeros;
  const std::size_t n = p.dims.empty() ? 0 : p.dims[0];
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t l = 1; l <= std::min(r, n); ++l) {
        const std::size_t m = r - l + 1;
        if (j <= m && k <= m) cells.push_back({j, k, l});
        if (j == m && k == m) zeros.push_back({j, k, l});
      }
    }
  }
  return cells == p.cells && zeros == p.zero_set;
}

std::size_t staircase_size(std::size_t r) { return r * (r + 1) * (2 * r + 1) / 6; }

bool fit_condition_holds(std::size_t n, std::size_t r) { return 4 * n >= (r + 3) * (r + 3); }

Tensor build_diagonal_limit(std::size_t n, std::size_t r, const Field& field) {
  Tensor s(field, {n, n, n});
  for (std::size_t l = 1; l <= r; ++l) s.set({r - l, r - l, l - 1}, field.one());
  return s;
}

namespace {

Matrix random_invertible(const Field& field, std::size_t m, std::mt19937_64& rng) {
  for (;;) {
    Matrix a(field, m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) a(i, j) = field.random(rng);
    }
    if (a.is_invertible()) return a;
  }
}

std::string interval(std::size_t a, std::size_t b) {
  return "[" + std::to_string(a) + ", " + std::to_string(b) + "]";
}

// Same integer entries viewed in another field.
Tensor reinterpret(const Tensor& t, const Field& field) {
  if (t.field() == field) return t;
  Tensor out(field, t.dims());
  for (std::size_t off = 0; off < t.size(); ++off) {
    const Scalar& x = t[off];
    if (Field::is_zero(x)) continue;
    out[off] = t.field().is_rationals() ? field.from_rational(x) : field.from_integer(x.get_num());
  }
  return out;
}

}  // namespace

PlantedTensor build_T_tilde(std::size_t n, std::size_t r, const Field& field, std::mt19937_64* random_blocks) {
  if (r < 1 || r > n) throw InputError("need 1 <= r <= n, got n = " + std::to_string(n) + ", r = " + std::to_string(r));
  if (!fit_condition_holds(n, r)) {
    throw PlacementError("fit condition n >= (r+3)^2/4 fails for n = " + std::to_string(n) +
                         ", r = " + std::to_string(r));
  }
  PlantedTensor out{build_diagonal_limit(n, r, field), build_diagonal_limit(n, r, field), {}};
  std::size_t next_row = r + 1;
  std::size_t next_col = r + 1;
  for (std::size_t s = 0; s < r; ++s) {
    const std::size_t layer = r - s;
    const bool even = s % 2 == 0;
    std::size_t& next = even ? next_row : next_col;
    const std::size_t start = next;
    const std::size_t end = start + s;
    if (end > n) {
      throw PlacementError(std::string(even ? "row" : "column") + " interval " + interval(start, end) +
                           " for the block of size " + std::to_string(s + 1) + " in layer " +
                           std::to_string(layer) + " exceeds n = " + std::to_string(n));
    }
    next = end + 1;
    const Matrix block = random_blocks ? random_invertible(field, s + 1, *random_blocks)
                                       : Matrix::identity(field, s + 1);
    for (std::size_t u = 0; u <= s; ++u) {
      for (std::size_t v = 0; v <= s; ++v) {
        if (Field::is_zero(block(u, v))) continue;
        const Index idx = even ? Index{start - 1 + u, v, layer - 1} : Index{u, start - 1 + v, layer - 1};
        out.t_tilde.set(idx, block(u, v));
      }
    }
    out.placements.push_back({even ? Placement::Parity::Even : Placement::Parity::Odd, s, layer, start, end});
  }
  return out;
}

namespace {

// Columns of the Jacobian (one vector of P-rows per upper-triangular E_ab per factor), as field scalars.
std::vector<std::vector<Scalar>> jacobian_columns(const Tensor& t, const PyramidPattern& p) {
  if (t.order() != 3 || t.dims() != p.dims) throw ShapeError("Jacobian needs an order-3 tensor matching the pyramid");
  const std::size_t n1 = t.dims()[0];
  const std::size_t n2 = t.dims()[1];
  std::vector<std::vector<std::size_t>> rows_by_j(n1 + 1);
  std::vector<std::vector<std::size_t>> rows_by_k(n2 + 1);
  for (std::size_t row = 0; row < p.cells.size(); ++row) {
    rows_by_j[p.cells[row][0]].push_back(row);
    rows_by_k[p.cells[row][1]].push_back(row);
  }
  std::vector<std::vector<Scalar>> cols;
  cols.reserve(n1 * (n1 + 1) / 2 + n2 * (n2 + 1) / 2);
  for (std::size_t a = 1; a <= n1; ++a) {
    for (std::size_t b = a; b <= n1; ++b) {
      std::vector<Scalar> col(p.cells.size());
      for (std::size_t row : rows_by_j[a]) {
        const Cell& c = p.cells[row];
        col[row] = t.at({b - 1, c[1] - 1, c[2] - 1});
      }
      cols.push_back(std::move(col));
    }
  }
  for (std::size_t a = 1; a <= n2; ++a) {
    for (std::size_t b = a; b <= n2; ++b) {
      std::vector<Scalar> col(p.cells.size());
      for (std::size_t row : rows_by_k[a]) {
        const Cell& c = p.cells[row];
        col[row] = t.at({c[0] - 1, b - 1, c[2] - 1});
      }
      cols.push_back(std::move(col));
    }
  }
  return cols;
}

bool all_zero(const std::vector<Scalar>& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return Field::is_zero(x); });
}

}  // namespace

Matrix jacobian_matrix(const Tensor& t_tilde, const PyramidPattern& p) {
  const auto cols = jacobian_columns(t_tilde, p);
  Matrix m(t_tilde.field(), p.cells.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t row = 0; row < cols[c].size(); ++row) m(row, c) = cols[c][row];
  }
  return m;
}

std::size_t jacobian_dominance_rank(const Tensor& t_tilde, const PyramidPattern& p, const Field& field) {
  const Tensor t = reinterpret(t_tilde, field);
  auto cols = jacobian_columns(t, p);
  std::erase_if(cols, all_zero);
  if (cols.empty()) return 0;
  // rank(J) = rank(J^T): the nonzero columns become rows.
  if (field.has_word_prime()) {
    std::vector<std::vector<std::uint64_t>> rows(cols.size(), std::vector<std::uint64_t>(p.cells.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      for (std::size_t i = 0; i < cols[c].size(); ++i) rows[c][i] = cols[c][i].get_num().get_ui();
    }
    return rank_mod_word_prime(field.word_prime(), std::move(rows));
  }
  return Matrix(field, cols).rank();
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "Certified") return Verdict::Certified;
  if (s == "Refuted") return Verdict::Refuted;
  if (s == "Inconclusive") return Verdict::Inconclusive;
  throw InputError("unknown verdict '" + s + "'");
}

namespace {

bool limit_equals(const WeightProfile& profile, const Tensor& t, const Tensor& s) {
  const LimitOutcome lim = try_limit(profile.subgroup(t.field()), t, LimitDirection::ToZero);
  return lim.limit && *lim.limit == s;
}

std::size_t default_r(std::size_t n) {
  BigInt root;
  BigInt four_n = BigInt(static_cast<unsigned long>(n)) * 4;
  mpz_sqrt(root.get_mpz_t(), four_n.get_mpz_t());
  return root <= 3 ? 0 : static_cast<std::size_t>(root.get_ui()) - 3;
}

}  // namespace

DegenerationCertificate certify_generic_lower_bound(std::size_t n, std::optional<std::size_t> r,
                                                    const CertifyOptions& options) {
  DegenerationCertificate cert;
  cert.n = n;
  cert.r = r.value_or(default_r(n));
  if (cert.r < 1) throw InputError("r must be at least 1 (n = " + std::to_string(n) + ")");
  if (cert.r > n) throw InputError("r = " + std::to_string(cert.r) + " exceeds n = " + std::to_string(n));

  std::mt19937_64 rng(options.seed);
  cert.field = options.field ? *options.field : Field::random_62bit_prime(rng);
  cert.primes_tried.push_back(cert.field.describe());

  cert.profile = build_weight_profile(n, cert.r);
  const PyramidPattern pyramid = build_pyramid(cert.profile);
  if (!matches_staircase(pyramid, cert.r) || pyramid.size() != staircase_size(cert.r)) {
    throw std::logic_error("pyramid enumeration disagrees with its closed form");
  }
  cert.pyramid_size = pyramid.size();

  PlantedTensor planted = build_T_tilde(n, cert.r, cert.field);
  cert.s = planted.s;
  cert.t_tilde = planted.t_tilde;
  cert.placements = planted.placements;
  cert.limit_check = limit_equals(cert.profile, cert.t_tilde, cert.s);
  cert.s_recognized = is_diagonal_unit_equivalent(cert.s) == cert.r;
  cert.jacobian_rank = jacobian_dominance_rank(cert.t_tilde, pyramid, cert.field);

  // The identity-block tensor is integral, so any prime certifies it.
  if (cert.jacobian_rank < cert.pyramid_size && !options.field) {
    for (int i = 0; i < options.max_prime_retries && cert.jacobian_rank < cert.pyramid_size; ++i) {
      const Field f = Field::random_62bit_prime(rng);
      cert.primes_tried.push_back(f.describe());
      const std::size_t rank = jacobian_dominance_rank(cert.t_tilde, pyramid, f);
      if (rank == cert.pyramid_size) {
        cert.field = f;
        cert.t_tilde = reinterpret(cert.t_tilde, f);
        cert.s = reinterpret(cert.s, f);
      }
      cert.jacobian_rank = std::max(cert.jacobian_rank, rank);
    }
  }
  for (int i = 0; i < options.max_block_retries && cert.jacobian_rank < cert.pyramid_size; ++i) {
    PlantedTensor alt = build_T_tilde(n, cert.r, cert.field, &rng);
    const std::size_t rank = jacobian_dominance_rank(alt.t_tilde, pyramid, cert.field);
    if (rank == cert.pyramid_size && limit_equals(cert.profile, alt.t_tilde, alt.s)) {
      cert.t_tilde = alt.t_tilde;
      cert.placements = alt.placements;
      cert.jacobian_rank = rank;
      cert.random_blocks = true;
    }
  }

  const bool full = cert.jacobian_rank == cert.pyramid_size;
  if (cert.limit_check && cert.s_recognized && full) {
    cert.verdict = Verdict::Certified;
  } else if (!cert.limit_check || !cert.s_recognized || cert.field.is_rationals() ||
             cert.primes_tried.size() >= 2) {
    cert.verdict = Verdict::Refuted;
  } else {
    cert.verdict = Verdict::Inconclusive;
  }
  return cert;
}

std::vector<std::string> verify_certificate(const DegenerationCertificate& cert, const Field& fresh_field) {
  std::vector<std::string> failed;
  const std::size_t n = cert.n;
  const std::size_t r = cert.r;
  if (r < 1 || r > n || !fit_condition_holds(n, r)) {
    failed.push_back("parameters");
    return failed;
  }
  const std::vector<std::size_t> cube{n, n, n};
  if (cert.t_tilde.dims() != cube || cert.s.dims() != cube || !(cert.t_tilde.field() == cert.s.field())) {
    failed.push_back("shape");
    return failed;
  }

  const WeightProfile expected_profile = build_weight_profile(n, r);
  if (!(cert.profile == expected_profile)) failed.push_back("profile");
  const PyramidPattern pyramid = build_pyramid(expected_profile);
  if (cert.pyramid_size != pyramid.size() || pyramid.size() != staircase_size(r)) failed.push_back("pyramidSize");

  const Field& f = cert.t_tilde.field();
  if (!(cert.s == build_diagonal_limit(n, r, f)) || is_diagonal_unit_equivalent(cert.s) != r) {
    failed.push_back("S");
  }

  bool restriction_ok = true;
  for (const Cell& c : pyramid.cells) {
    const Index idx = to_index(c);
    if (cert.t_tilde.at(idx) != cert.s.at(idx)) restriction_ok = false;
  }
  if (!restriction_ok) failed.push_back("T|_P = S|_P");

  bool placement_ok = cert.placements.size() == r;
  NdArray<char> planted({n, n, n}, 0);
  std::size_t next_row = r + 1;
  std::size_t next_col = r + 1;
  for (std::size_t s = 0; placement_ok && s < r; ++s) {
    const Placement& pl = cert.placements[s];
    const bool even = pl.parity == Placement::Parity::Even;
    if (pl.s != s || pl.layer != r - s || even != (s % 2 == 0) || pl.end != pl.start + s || pl.end > n ||
        pl.start < (even ? next_row : next_col)) {
      placement_ok = false;
      break;
    }
    (even ? next_row : next_col) = pl.end + 1;
    Matrix block(f, s + 1, s + 1);
    for (std::size_t u = 0; u <= s; ++u) {
      for (std::size_t v = 0; v <= s; ++v) {
        const Index idx = even ? Index{pl.start - 1 + u, v, pl.layer - 1} : Index{u, pl.start - 1 + v, pl.layer - 1};
        block(u, v) = cert.t_tilde.at(idx);
        planted.at(idx) = 1;
      }
    }
    if (!block.is_invertible()) placement_ok = false;
  }
  if (placement_ok) {
    for (const Index& idx : cert.t_tilde.support()) {
      if (!planted.at(idx) && !pyramid.contains(to_cell(idx))) placement_ok = false;
    }
  }
  if (!placement_ok) failed.push_back("placements");

  try {
    if (!(ops_limit(expected_profile.subgroup(f), cert.t_tilde, LimitDirection::ToZero) == cert.s)) {
      failed.push_back("limit");
    }
  } catch (const NoLimitError&) {
    failed.push_back("limit");
  }

  if (cert.jacobian_rank != pyramid.size() ||
      jacobian_dominance_rank(cert.t_tilde, pyramid, fresh_field) != pyramid.size()) {
    failed.push_back("jacobianRank");
  }
  if (cert.verdict != Verdict::Certified) failed.push_back("verdict");
  return failed;
}

bool is_downward_closed(const CellSet& p) {
  for (const Cell& c : p) {
    Cell lower = c;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) return false;
      if (c[i] == 1) continue;
      --lower[i];
      if (!p.contains(lower)) return false;
      ++lower[i];
    }
  }
  return true;
}

bool cover_covers(const std::vector<DichotomyResult::Slice>& cover, const CellSet& p) {
  return std::all_of(p.begin(), p.end(), [&](const Cell& c) {
    return std::any_of(cover.begin(), cover.end(), [&](const DichotomyResult::Slice& sl) {
      return sl.mode < c.size() && c[sl.mode] == sl.value;
    });
  });
}

DichotomyResult hypercube_dichotomy(const CellSet& p, std::size_t s, std::size_t d) {
  if (s < 1 || d < 1) throw InputError("dichotomy needs s >= 1 and d >= 1");
  for (const Cell& c : p) {
    if (c.size() != d) throw InputError("cell of order " + std::to_string(c.size()) + " in an order-" +
                                        std::to_string(d) + " pattern");
  }
  if (!is_downward_closed(p)) throw InputError("pattern is not downward closed");

  DichotomyResult out;
  if (p.contains(Cell(d, s))) {
    out.hypercube = true;
    Cell c(d, 1);
    for (;;) {
      if (!p.contains(c)) throw std::logic_error("downward closure violated inside the hypercube");
      out.cube.push_back(c);
      std::size_t i = d;
      while (i > 0 && c[i - 1] == s) c[--i] = 1;
      if (i == 0) break;
      ++c[i - 1];
    }
    return out;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t v = 1; v < s; ++v) out.cover.push_back({i, v});
  }
  if (!cover_covers(out.cover, p)) throw std::logic_error("slice cover misses a cell");
  return out;
}

namespace {

struct CoverSearch {
  std::vector<Cell> points;
  std::vector<std::vector<bool>> chosen;
  std::size_t best;

  void run(std::size_t depth) {
    if (depth >= best) return;
    const Cell* open = nullptr;
    for (const Cell& c : points) {
      bool hit = false;
      for (std::size_t i = 0; i < c.size() && !hit; ++i) hit = chosen[i][c[i]];
      if (!hit) {
        open = &c;
        break;
      }
    }
    if (!open) {
      best = depth;
      return;
    }
    for (std::size_t i = 0; i < open->size(); ++i) {
      chosen[i][(*open)[i]] = true;
      run(depth + 1);
      chosen[i][(*open)[i]] = false;
    }
  }
};

}  // namespace

std::size_t min_slice_cover(const CellSet& support, const std::vector<std::size_t>& dims) {
  if (dims.size() > 4 || std::any_of(dims.begin(), dims.end(), [](std::size_t n) { return n > 8; })) {
    throw InputError("slice cover search limited to d <= 4 and dimensions <= 8");
  }
  CoverSearch search;
  search.points.assign(support.begin(), support.end());
  search.chosen.resize(dims.size());
  std::size_t best = support.empty() ? 0 : std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < dims.size(); ++i) {
    search.chosen[i].assign(dims[i] + 1, false);
    std::set<std::size_t> values;
    for (const Cell& c : support) {
      if (c.size() != dims.size() || c[i] < 1 || c[i] > dims[i]) throw InputError("cell outside the grid");
      values.insert(c[i]);
    }
    best = std::min(best, values.size());
  }
  search.best = best;
  search.run(0);
  return search.best;
}

}  // namespace subrank
