#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "subrank/degeneration.hpp"
#include "subrank/errors.hpp"
#include "support.hpp"

namespace subrank {
namespace {

using testing::Q;

std::vector<BigInt> W(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Tensor drop_block(const PlantedTensor& planted, std::size_t which) {
  Tensor t = planted.t_tilde;
  const Placement& pl = planted.placements[which];
  for (std::size_t u = 0; u <= pl.s; ++u)
    for (std::size_t v = 0; v <= pl.s; ++v) {
      const Index idx = pl.parity == Placement::Parity::Even ? Index{pl.start - 1 + u, v, pl.layer - 1}
                                                             : Index{u, pl.start - 1 + v, pl.layer - 1};
      t.set(idx, t.field().zero());
    }
  return t;
}

// The Jacobian assembled from the group action itself: E_ab applied along one mode, restricted to P.
Matrix jacobian_via_action(const Tensor& t, const PyramidPattern& p) {
  const std::size_t n = t.dims()[0];
  std::vector<std::vector<Scalar>> cols;
  for (std::size_t mode = 0; mode < 2; ++mode)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        const Tensor moved = act_mode(Matrix::unit(t.field(), n, n, a, b), mode, t);
        std::vector<Scalar> col;
        for (const Cell& c : p.cells) col.push_back(moved.at(to_index(c)));
        cols.push_back(std::move(col));
      }
  Matrix m(t.field(), p.cells.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < cols[c].size(); ++r) m(r, c) = cols[c][r];
  return m;
}

CellSet as_set(const std::vector<Cell>& cells) { return CellSet(cells.begin(), cells.end()); }

TEST(WeightProfile, Examples) {
  const auto p = build_weight_profile(9, 3);
  EXPECT_EQ(p.weights[2], W({-16, -8, -4, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(p.weights[0], W({2, 4, 8, 16, 32, 64, 128, 256, 512}));
  EXPECT_EQ(p.weights[1], p.weights[0]);
  const auto tiny = build_weight_profile(1, 1);
  EXPECT_EQ(tiny.weights[0], W({2}));
  EXPECT_EQ(tiny.weights[2], W({-4}));
  EXPECT_THROW(build_weight_profile(3, 4), InputError);
  EXPECT_THROW(build_weight_profile(3, 0), InputError);
  for (std::size_t n = 1; n <= 64; ++n)
    for (std::size_t r = 1; r <= n; r += 7) EXPECT_TRUE(build_weight_profile(n, r).is_weakly_increasing());
}

TEST(Pyramid, Examples) {
  const auto p4 = build_pyramid(build_weight_profile(6, 4));
  EXPECT_EQ(as_set(p4.zero_set), (CellSet{{4, 4, 1}, {3, 3, 2}, {2, 2, 3}, {1, 1, 4}}));
  EXPECT_EQ(build_pyramid(build_weight_profile(9, 3)).size(), 14u);
  const auto p1 = build_pyramid(build_weight_profile(5, 1));
  EXPECT_EQ(p1.cells, (std::vector<Cell>{{1, 1, 1}}));
  EXPECT_EQ(p1.zero_set, p1.cells);
  EXPECT_TRUE(is_downward_closed(as_set(p4.cells)));
}

TEST(PyramidProperty, ClosedFormForAllSmallProfiles) {
  for (std::size_t n = 1; n <= 64; ++n) {
    for (std::size_t r = 1; r <= n; ++r) {
      const auto p = build_pyramid(build_weight_profile(n, r));
      ASSERT_TRUE(matches_staircase(p, r)) << "n=" << n << " r=" << r;
      ASSERT_EQ(p.size(), r * (r + 1) * (2 * r + 1) / 6);
    }
  }
}

TEST(PyramidProperty, EnumerationMatchesDirectWeightSums) {
  for (std::size_t n : {3, 7, 10}) {
    for (std::size_t r = 1; r <= n; ++r) {
      const auto profile = build_weight_profile(n, r);
      const auto p = build_pyramid(profile);
      for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t k = 1; k <= n; ++k)
          for (std::size_t l = 1; l <= n; ++l) {
            const BigInt w = profile.weight_sum({j, k, l});
            EXPECT_EQ(p.contains({j, k, l}), w <= 0);
          }
    }
  }
}

TEST(TTilde, NineThree) {
  const auto planted = build_T_tilde(9, 3, Q());
  ASSERT_EQ(planted.placements.size(), 3u);
  EXPECT_EQ(planted.placements[0], (Placement{Placement::Parity::Even, 0, 3, 4, 4}));
  EXPECT_EQ(planted.placements[1], (Placement{Placement::Parity::Odd, 1, 2, 4, 5}));
  EXPECT_EQ(planted.placements[2], (Placement{Placement::Parity::Even, 2, 1, 5, 7}));
  EXPECT_EQ(planted.t_tilde.nonzero_count(), 9u);
  const auto pyramid = build_pyramid(build_weight_profile(9, 3));
  for (const Cell& c : pyramid.cells) EXPECT_EQ(planted.t_tilde.at(to_index(c)), planted.s.at(to_index(c)));
  EXPECT_EQ(planted.s, build_diagonal_limit(9, 3, Q()));
}

TEST(TTilde, FitBoundary) {
  EXPECT_NO_THROW(build_T_tilde(16, 5, Q()));
  EXPECT_TRUE(fit_condition_holds(16, 5));
  EXPECT_FALSE(fit_condition_holds(10, 4));
  try {
    build_T_tilde(10, 4, Q());
    FAIL() << "expected PlacementError";
  } catch (const PlacementError& e) {
    EXPECT_NE(std::string(e.what()).find("(r+3)^2/4"), std::string::npos);
  }
}

TEST(TTilde, GreedyPlacementSucceedsAtEveryFeasibleBoundary) {
  for (std::size_t r = 1; r <= 20; ++r) {
    const std::size_t n = ((r + 3) * (r + 3) + 3) / 4;
    ASSERT_TRUE(fit_condition_holds(n, r));
    ASSERT_FALSE(fit_condition_holds(n - 1, r));
    EXPECT_NO_THROW(build_T_tilde(n, r, testing::F101())) << "r=" << r;
  }
}

TEST(Jacobian, NineThreeRankAndOracle) {
  const auto planted = build_T_tilde(9, 3, Q());
  const auto pyramid = build_pyramid(build_weight_profile(9, 3));
  const Matrix j = jacobian_matrix(planted.t_tilde, pyramid);
  EXPECT_EQ(j.rows(), 14u);
  EXPECT_EQ(j.cols(), 90u);
  EXPECT_EQ(j, jacobian_via_action(planted.t_tilde, pyramid));
  EXPECT_EQ(j.rank(), 14u);
  EXPECT_EQ(jacobian_dominance_rank(planted.t_tilde, pyramid, Q()), 14u);
  EXPECT_EQ(jacobian_dominance_rank(planted.t_tilde, pyramid, testing::Fbig()), 14u);
}

TEST(Jacobian, SingleEntry) {
  const auto planted = build_T_tilde(4, 1, Q());
  const auto pyramid = build_pyramid(build_weight_profile(4, 1));
  EXPECT_EQ(jacobian_dominance_rank(planted.s, pyramid, Q()), 1u);
}

TEST(Jacobian, NegativeControls) {
  for (std::size_t n : {8, 9, 16, 25}) {
    const std::size_t r = static_cast<std::size_t>(std::sqrt(4.0 * n)) - 3;
    const auto planted = build_T_tilde(n, r, testing::Fbig());
    const auto pyramid = build_pyramid(build_weight_profile(n, r));
    EXPECT_LT(jacobian_dominance_rank(planted.s, pyramid, testing::Fbig()), pyramid.size()) << n;
    bool some_drop = false;
    for (std::size_t b = 0; b < planted.placements.size(); ++b) {
      some_drop |= jacobian_dominance_rank(drop_block(planted, b), pyramid, testing::Fbig()) < pyramid.size();
    }
    EXPECT_TRUE(some_drop) << n;
  }
}

TEST(JacobianProperty, WordPrimeRankMatchesRationalRank) {
  for (std::size_t n : {4, 8, 9, 16}) {
    const std::size_t r = static_cast<std::size_t>(std::sqrt(4.0 * n)) - 3;
    const auto planted = build_T_tilde(n, r, Q());
    const auto pyramid = build_pyramid(build_weight_profile(n, r));
    EXPECT_EQ(jacobian_dominance_rank(planted.t_tilde, pyramid, testing::Fbig()),
              jacobian_matrix(planted.t_tilde, pyramid).rank());
  }
}

TEST(Certify, SmallInstances) {
  struct Case {
    std::size_t n, r, size;
  };
  for (const Case c : {Case{9, 3, 14}, Case{8, 2, 5}, Case{4, 1, 1}, Case{49, 11, 506}}) {
    const auto cert = certify_generic_lower_bound(c.n);
    EXPECT_EQ(cert.r, c.r);
    EXPECT_EQ(cert.verdict, Verdict::Certified);
    EXPECT_EQ(cert.jacobian_rank, c.size);
    EXPECT_EQ(cert.pyramid_size, c.size);
    EXPECT_TRUE(cert.limit_check);
    EXPECT_TRUE(cert.s_recognized);
    EXPECT_TRUE(verify_certificate(cert, testing::Fbig()).empty());
  }
}

TEST(Certify, OverRationalsAndErrors) {
  CertifyOptions opts;
  opts.field = Q();
  const auto cert = certify_generic_lower_bound(16, std::nullopt, opts);
  EXPECT_EQ(cert.verdict, Verdict::Certified);
  EXPECT_EQ(cert.jacobian_rank, 55u);
  EXPECT_THROW(certify_generic_lower_bound(3), InputError);
  EXPECT_THROW(certify_generic_lower_bound(10, 4), PlacementError);
  EXPECT_THROW(certify_generic_lower_bound(5, 6), InputError);
}

TEST(Certify, DeterministicForSeed) {
  CertifyOptions opts;
  opts.seed = 99;
  const auto a = certify_generic_lower_bound(9, std::nullopt, opts);
  const auto b = certify_generic_lower_bound(9, std::nullopt, opts);
  EXPECT_EQ(a.field, b.field);
  EXPECT_EQ(a.t_tilde, b.t_tilde);
}

TEST(VerifyCertificate, TamperedClauses) {
  const auto cert = certify_generic_lower_bound(9);
  auto has = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  auto bad = cert;
  bad.t_tilde.set({0, 1, 0}, bad.t_tilde.field().one());  // inside P, off the zero set
  const auto inside = verify_certificate(bad, testing::Fbig());
  EXPECT_TRUE(has(inside, "T|_P = S|_P"));
  EXPECT_TRUE(has(inside, "limit"));
  bad = cert;
  bad.jacobian_rank = 13;
  EXPECT_TRUE(has(verify_certificate(bad, testing::Fbig()), "jacobianRank"));
  bad = cert;
  bad.t_tilde.set({3, 0, 2}, bad.t_tilde.field().zero());  // delete the 1x1 block
  EXPECT_TRUE(has(verify_certificate(bad, testing::Fbig()), "placements"));
  bad = cert;
  for (std::size_t u = 0; u < 3; ++u)  // delete the 3x3 block in layer 1
    for (std::size_t v = 0; v < 3; ++v) bad.t_tilde.set({4 + u, v, 0}, bad.t_tilde.field().zero());
  const auto failed = verify_certificate(bad, testing::Fbig());
  EXPECT_TRUE(has(failed, "placements"));
  EXPECT_TRUE(has(failed, "jacobianRank"));
  bad = cert;
  bad.profile.weights[2][0] = -17;
  EXPECT_TRUE(has(verify_certificate(bad, testing::Fbig()), "profile"));
  bad = cert;
  bad.t_tilde.set({8, 8, 0}, bad.t_tilde.field().one());  // positive weight: vanishes in the limit
  EXPECT_FALSE(has(verify_certificate(bad, testing::Fbig()), "limit"));
  bad = cert;
  bad.verdict = Verdict::Inconclusive;
  EXPECT_TRUE(has(verify_certificate(bad, testing::Fbig()), "verdict"));
  bad = cert;
  bad.pyramid_size = 15;
  EXPECT_TRUE(has(verify_certificate(bad, testing::Fbig()), "pyramidSize"));
}

// All downward-closed subsets of [3]^3, from plane partitions: heights h(j,k) in [0,3],
// weakly decreasing along rows and columns.
std::vector<CellSet> downward_closed_subsets_of_cube3() {
  std::vector<CellSet> out;
  std::array<int, 9> h{};
  for (int code = 0; code < (1 << 18); ++code) {
    for (int i = 0; i < 9; ++i) h[i] = (code >> (2 * i)) & 3;
    bool ok = true;
    for (int j = 0; j < 3 && ok; ++j)
      for (int k = 0; k < 3 && ok; ++k) {
        if (j > 0 && h[3 * j + k] > h[3 * (j - 1) + k]) ok = false;
        if (k > 0 && h[3 * j + k] > h[3 * j + k - 1]) ok = false;
      }
    if (!ok) continue;
    CellSet p;
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (int l = 1; l <= h[3 * j + k]; ++l) p.insert({j + 1, k + 1, static_cast<std::size_t>(l)});
    out.push_back(std::move(p));
  }
  return out;
}

bool brute_force_downward_closed(const CellSet& p) {
  for (const Cell& c : p)
    for (std::size_t a = 1; a <= c[0]; ++a)
      for (std::size_t b = 1; b <= c[1]; ++b)
        for (std::size_t l = 1; l <= c[2]; ++l)
          if (!p.contains({a, b, l})) return false;
  return true;
}

TEST(Dichotomy, Examples) {
  CellSet cube;
  for (std::size_t a = 1; a <= 2; ++a)
    for (std::size_t b = 1; b <= 2; ++b)
      for (std::size_t c = 1; c <= 2; ++c) cube.insert({a, b, c});
  const auto hc = hypercube_dichotomy(cube, 2, 3);
  EXPECT_TRUE(hc.hypercube);
  EXPECT_EQ(hc.cube.size(), 8u);

  CellSet some_one;
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = 1; b <= 3; ++b)
      for (std::size_t c = 1; c <= 3; ++c)
        if (a == 1 || b == 1 || c == 1) some_one.insert({a, b, c});
  const auto cov = hypercube_dichotomy(some_one, 2, 3);
  EXPECT_FALSE(cov.hypercube);
  EXPECT_EQ(cov.cover, (std::vector<DichotomyResult::Slice>{{0, 1}, {1, 1}, {2, 1}}));
  EXPECT_TRUE(cover_covers(cov.cover, some_one));

  EXPECT_THROW(hypercube_dichotomy(CellSet{{2, 1, 1}}, 2, 3), InputError);
}

TEST(Dichotomy, PyramidReach) {
  const std::size_t r = 7;
  const auto p = as_set(build_pyramid(build_weight_profile(10, r)).cells);
  std::size_t reach = 0;
  while (p.contains(Cell(3, reach + 1))) ++reach;
  EXPECT_EQ(reach, 4u);  // (m, m, l) with l <= r - m + 1 and l = m
  for (std::size_t s = 1; s <= 6; ++s) EXPECT_EQ(hypercube_dichotomy(p, s, 3).hypercube, s <= reach);
  EXPECT_FALSE(hypercube_dichotomy(p, r / 3 + 1 + 2, 3).hypercube);
}

TEST(DichotomyProperty, ExhaustiveOverCube3) {
  const auto subsets = downward_closed_subsets_of_cube3();
  ASSERT_EQ(subsets.size(), 980u);
  for (const CellSet& p : subsets) {
    ASSERT_TRUE(brute_force_downward_closed(p));
    for (std::size_t s = 1; s <= 3; ++s) {
      const auto res = hypercube_dichotomy(p, s, 3);
      if (res.hypercube) {
        for (const Cell& c : res.cube) EXPECT_TRUE(p.contains(c));
        EXPECT_EQ(res.cube.size(), s * s * s);
      } else {
        EXPECT_TRUE(cover_covers(res.cover, p));
        EXPECT_EQ(res.cover.size(), 3 * (s - 1));
        EXPECT_LE(min_slice_cover(p, {3, 3, 3}), 3 * (s - 1));
      }
    }
  }
}

// Exhaustive: try every subset of the 3 * 3 slices of [3]^3.
std::size_t brute_force_cover(const CellSet& p) {
  std::size_t best = 9;
  for (int mask = 0; mask < (1 << 9); ++mask) {
    std::vector<DichotomyResult::Slice> cover;
    for (int b = 0; b < 9; ++b)
      if (mask >> b & 1) cover.push_back({static_cast<std::size_t>(b / 3), static_cast<std::size_t>(b % 3 + 1)});
    if (cover.size() < best && cover_covers(cover, p)) best = cover.size();
  }
  return best;
}

TEST(SliceCover, Examples) {
  for (std::size_t r = 1; r <= 5; ++r) {
    CellSet diag;
    for (std::size_t i = 1; i <= r; ++i) diag.insert({i, i, i});
    EXPECT_EQ(min_slice_cover(diag, {r, r, r}), r);
  }
  CellSet slice;
  for (std::size_t b = 1; b <= 4; ++b)
    for (std::size_t c = 1; c <= 4; ++c) slice.insert({2, b, c});
  EXPECT_EQ(min_slice_cover(slice, {4, 4, 4}), 1u);
  EXPECT_EQ(min_slice_cover(as_set(build_pyramid(build_weight_profile(3, 3)).cells), {3, 3, 3}), 3u);
  EXPECT_EQ(min_slice_cover({}, {3, 3, 3}), 0u);
  EXPECT_THROW(min_slice_cover({}, {9, 2, 2}), InputError);
}

TEST(SliceCoverProperty, MatchesBruteForceOnCube3) {
  const auto subsets = downward_closed_subsets_of_cube3();
  for (std::size_t i = 0; i < subsets.size(); i += 7) EXPECT_EQ(min_slice_cover(subsets[i], {3, 3, 3}), brute_force_cover(subsets[i]));
  std::mt19937_64 rng(30);
  for (int i = 0; i < 200; ++i) {
    CellSet p;
    for (int k = 0; k < 6; ++k) p.insert({1 + rng() % 3, 1 + rng() % 3, 1 + rng() % 3});
    EXPECT_EQ(min_slice_cover(p, {3, 3, 3}), brute_force_cover(p));
  }
}

}  // namespace
}  // namespace subrank
