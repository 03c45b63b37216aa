#include <benchmark/benchmark.h>

#include <random>

#include "toytheory/ring_linalg.hpp"

using namespace toytheory;

namespace {

std::vector<ModVector> random_rows(std::mt19937_64& rng, Scalar d, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<Scalar> coord(0, d - 1);
  std::vector<ModVector> out;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Scalar> e(cols);
    for (auto& x : e) x = coord(rng);
    out.emplace_back(std::move(e), Modulus(d));
  }
  return out;
}

void BM_HowellForm(benchmark::State& state) {
  const Scalar d = state.range(0);
  const auto cols = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(1);
  const auto rows = random_rows(rng, d, cols / 2, cols);
  for (auto _ : state) benchmark::DoNotOptimize(howell_form(rows, Modulus(d), cols));
}
BENCHMARK(BM_HowellForm)->ArgsProduct({{2, 3, 4, 6, 12}, {4, 8, 16, 32}});

void BM_OrthogonalComplement(benchmark::State& state) {
  const Scalar d = state.range(0);
  const auto cols = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(2);
  const auto v = howell_form(random_rows(rng, d, cols / 2, cols), Modulus(d), cols);
  for (auto _ : state) benchmark::DoNotOptimize(orthogonal_complement(v));
}
BENCHMARK(BM_OrthogonalComplement)->ArgsProduct({{2, 4, 6}, {4, 8, 16, 32}});

void BM_CosetIntersect(benchmark::State& state) {
  const Scalar d = state.range(0);
  const std::size_t cols = 8;
  std::mt19937_64 rng(3);
  const AffineCoset a(howell_form(random_rows(rng, d, 3, cols), Modulus(d), cols), random_rows(rng, d, 1, cols)[0]);
  const AffineCoset b(howell_form(random_rows(rng, d, 3, cols), Modulus(d), cols), random_rows(rng, d, 1, cols)[0]);
  for (auto _ : state) benchmark::DoNotOptimize(coset_intersect(a, b));
}
BENCHMARK(BM_CosetIntersect)->Arg(2)->Arg(3)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
