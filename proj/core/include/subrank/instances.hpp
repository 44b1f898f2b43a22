#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "subrank/hm_witness.hpp"
#include "subrank/series_matrix.hpp"
#include "subrank/tensor.hpp"

namespace subrank {

/// A random n x n polynomial matrix with constant nonzero determinant, returned with its
/// exact inverse (products of elementary matrices with monomial entries and a diagonal scaling).
std::pair<SeriesMatrix, SeriesMatrix> random_unimodular(const Field& field, std::size_t n, std::mt19937_64& rng,
                                                        int steps = 6, int max_degree = 2);

/// Random Laurent-polynomial matrix with entries supported on t^[min_exp, max_exp] and
/// exactly nonzero determinant (rejection sampling, n <= 8).
SeriesMatrix random_invertible_laurent(const Field& field, std::size_t n, std::mt19937_64& rng,
                                       std::int64_t min_exp = -2, std::int64_t max_exp = 2);

/// Random element of GL_n(K[[t]]): an invertible constant term plus higher polynomial terms.
SeriesMatrix random_power_series_unit(const Field& field, std::size_t n, std::mt19937_64& rng, int degree = 3);

/// A curve g(t) with a built-in decomposition h1 diag(t^w) h2^-1 per factor and a tensor p
/// such that lim g(t).p exists and is nonzero.
struct WitnessInstance {
  std::vector<SeriesMatrix> g;
  Tensor p;
  std::vector<std::vector<std::int64_t>> planted_weights;
};

WitnessInstance random_witness_instance(const Field& field, const std::vector<std::size_t>& dims,
                                        std::mt19937_64& rng, std::int64_t max_weight = 2);

Tensor random_tensor(const Field& field, const std::vector<std::size_t>& dims, std::mt19937_64& rng,
                     double density = 1.0);

}  // namespace subrank
