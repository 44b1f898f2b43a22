#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "subrank/degeneration.hpp"
#include "subrank/instances.hpp"
#include "subrank/loop_group.hpp"

namespace {

using namespace subrank;

void BM_SeriesMultiply(benchmark::State& state) {
  const Field f = Field::prime_field(BigInt("4611686018427387847"));
  std::mt19937_64 rng(1);
  std::vector<Scalar> a, b;
  for (int i = 0; i < state.range(0); ++i) {
    a.push_back(f.random(rng));
    b.push_back(f.random(rng));
  }
  const LaurentSeries x = LaurentSeries::truncated(f, -2, a, state.range(0) - 2);
  const LaurentSeries y = LaurentSeries::truncated(f, 1, b, state.range(0) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_SeriesMultiply)->Arg(16)->Arg(64)->Arg(256);

void BM_InvertUnit(benchmark::State& state) {
  const Field f = Field::prime_field(BigInt("4611686018427387847"));
  std::mt19937_64 rng(2);
  std::vector<Scalar> c{f.one()};
  for (int i = 1; i < 8; ++i) c.push_back(f.random(rng));
  const LaurentSeries u = LaurentSeries::polynomial(f, 0, c);
  for (auto _ : state) benchmark::DoNotOptimize(invert_unit(u, state.range(0)));
}
BENCHMARK(BM_InvertUnit)->Arg(16)->Arg(64)->Arg(256);

void BM_CimDecompose(benchmark::State& state) {
  const Field f = state.range(1) ? Field::rationals() : Field::prime_field(BigInt("4611686018427387847"));
  std::mt19937_64 rng(3);
  const SeriesMatrix g = random_invertible_laurent(f, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(cim_decompose(g, 16));
}
BENCHMARK(BM_CimDecompose)->Args({2, 0})->Args({4, 0})->Args({2, 1})->Args({4, 1});

void BM_JacobianRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t r = static_cast<std::size_t>(std::sqrt(4.0 * static_cast<double>(n))) - 3;
  const Field f = Field::prime_field(BigInt("4611686018427387847"));
  const PlantedTensor planted = build_T_tilde(n, r, f);
  const PyramidPattern pyramid = build_pyramid(build_weight_profile(n, r));
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_dominance_rank(planted.t_tilde, pyramid, f));
}
BENCHMARK(BM_JacobianRank)->Arg(16)->Arg(36)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
