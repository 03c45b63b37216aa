#pragma once

#include <vector>

#include "toytheory/epistemic_core.hpp"

namespace toytheory {

// Every valid state on Z_d^{2n}, sorted; requires d^{2n} <= 10^4.
std::vector<EpistemicState> enumerate_states(Modulus d, std::size_t n);
// Same list, computed once per (d, n) and shared read-only.
const std::vector<EpistemicState>& state_catalog(Modulus d, std::size_t n);

struct BipartitionCounts {
  Bipartition bipartition;
  std::size_t product = 0;
  std::size_t correlated = 0;
  std::size_t entangled = 0;
};

struct CatalogSummary {
  std::size_t total = 0;
  std::size_t pure = 0;
  std::size_t mixed = 0;
  std::vector<BipartitionCounts> bipartitions;
};

// Bipartitions with system 0 on side A, one per unordered split.
std::vector<Bipartition> all_bipartitions(std::size_t n);
CatalogSummary summarize_catalog(Modulus d, std::size_t n);

}  // namespace toytheory
