#include <benchmark/benchmark.h>

#include <random>

#include "toytheory/catalog.hpp"
#include "toytheory/measurement.hpp"
#include "toytheory/mixture_superposition.hpp"
#include "toytheory/transformations.hpp"

using namespace toytheory;

namespace {

void BM_EnumerateStates(benchmark::State& state) {
  const Modulus d(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_states(d, n));
}
BENCHMARK(BM_EnumerateStates)->Args({2, 1})->Args({3, 1})->Args({2, 2})->Args({3, 2})->Unit(benchmark::kMillisecond);

// Measure Z on every system of a q-known product state.
void BM_Update(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PhaseSpace ps(n, Modulus(2));
  std::vector<Observable> qs, ps_;
  for (std::size_t k = 0; k < n; ++k) {
    qs.push_back(ps.q(k));
    ps_.push_back(ps.p(k));
  }
  const auto s = make_state(ps, qs, ps.zero());
  const Measurement m(ps, ps_);
  for (auto _ : state) benchmark::DoNotOptimize(update(m, ps.zero(), s));
}
BENCHMARK(BM_Update)->RangeMultiplier(2)->Range(1, 32);

void BM_Mix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PhaseSpace ps(n, Modulus(3));
  std::vector<Observable> qs;
  for (std::size_t k = 0; k < n; ++k) qs.push_back(ps.q(k));
  const auto v = howell_form(qs, ps.modulus(), ps.dim());
  std::vector<ModVector> vals;
  for (Scalar t = 0; t < 3; ++t) {
    auto x = ps.zero();
    x[0] = t;
    vals.push_back(x);
  }
  const StateFamily fam(ps, v, vals);
  for (auto _ : state) benchmark::DoNotOptimize(mix(fam));
}
BENCHMARK(BM_Mix)->RangeMultiplier(2)->Range(1, 16);

void BM_ApplyRandomCliffordLike(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PhaseSpace ps(n, Modulus(2));
  auto t = SymplecticMap::identity(ps);
  for (std::size_t k = 0; k + 1 < n; ++k) t = compose(toy_cnot(k, k + 1, ps), compose(fourier(k, ps), t));
  std::vector<Observable> zs;
  for (std::size_t k = 0; k < n; ++k) zs.push_back(ps.p(k));
  const auto s = make_state(ps, zs, ps.zero());
  for (auto _ : state) benchmark::DoNotOptimize(apply(t, s));
}
BENCHMARK(BM_ApplyRandomCliffordLike)->RangeMultiplier(2)->Range(2, 32);

}  // namespace

BENCHMARK_MAIN();
