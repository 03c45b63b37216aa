#include <benchmark/benchmark.h>

#include "toytheory/catalog.hpp"
#include "toytheory/original_d2.hpp"
#include "toytheory/stabilizer_d2.hpp"

using namespace toytheory;

namespace {

void BM_StabilizerRoundTrip(benchmark::State& state) {
  const auto& cat = state_catalog(Modulus(2), 2);
  for (auto _ : state)
    for (const auto& s : cat) benchmark::DoNotOptimize(stab::to_general(stab::from_general(s)));
}
BENCHMARK(BM_StabilizerRoundTrip);

void BM_CatStateGroup(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<stab::PauliWord> gens;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::vector<stab::Letter> w(n, stab::Letter::I);
    w[k] = w[k + 1] = stab::Letter::Z;
    gens.emplace_back(false, w);
  }
  gens.emplace_back(false, std::vector<stab::Letter>(n, stab::Letter::X));
  for (auto _ : state) benchmark::DoNotOptimize(stab::ToyStabilizerGroup::from_generators(n, gens));
}
BENCHMARK(BM_CatStateGroup)->RangeMultiplier(2)->Range(2, 32);

void BM_CoarseMeasure(benchmark::State& state) {
  const std::array<std::array<int, 4>, 4> grid{{{1, 1, 3, 2}, {1, 1, 2, 3}, {3, 2, 1, 1}, {2, 3, 1, 1}}};
  std::map<int, std::set<original::OnticLabelState>> cells;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) cells[grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]].insert({4 - r, c + 1});
  std::vector<original::SetEpistemicState> partition;
  for (auto& [k, v] : cells) partition.emplace_back(2, v);
  const original::SetEpistemicState pre(2, {{3, 1}, {3, 2}, {2, 1}, {2, 2}});
  for (auto _ : state) benchmark::DoNotOptimize(original::coarse_measure(partition, pre, {3, 1}));
}
BENCHMARK(BM_CoarseMeasure);

}  // namespace

BENCHMARK_MAIN();
