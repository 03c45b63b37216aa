#include "toytheory/catalog.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "toytheory/entanglement.hpp"
#include "toytheory/errors.hpp"
#include "toytheory/measurement.hpp"

namespace toytheory {

std::vector<EpistemicState> enumerate_states(Modulus d, std::size_t n) {
  const PhaseSpace space(n, d);
  if (space.size() > 10000) {
    fail(ErrorCode::TooLarge, "catalog enumeration is limited to d^{2n} <= 10^4");
  }
  std::set<std::size_t> everything;
  for (std::size_t i = 0; i < n; ++i) everything.insert(i);
  const EpistemicState blank = full_ignorance(space);
  std::vector<EpistemicState> out;
  for (const auto& v : isotropic_submodules(space, everything)) {
    for (const auto& o : outcomes(Measurement(v), blank)) out.push_back(make_state(space, v, o.valuation));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<EpistemicState>& state_catalog(Modulus d, std::size_t n) {
  static std::mutex guard;
  static std::map<std::pair<Scalar, std::size_t>, std::vector<EpistemicState>> cache;
  std::lock_guard lock(guard);
  const auto key = std::make_pair(d.value(), n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate_states(d, n)).first;
  return it->second;
}

std::vector<Bipartition> all_bipartitions(std::size_t n) {
  std::vector<Bipartition> out;
  if (n < 2) return out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n) - 1; ++mask) {
    if (!(mask & 1u)) continue;
    std::set<std::size_t> a;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) a.insert(i);
    out.push_back(make_bipartition(n, a));
  }
  return out;
}

CatalogSummary summarize_catalog(Modulus d, std::size_t n) {
  const auto& states = state_catalog(d, n);
  CatalogSummary summary;
  summary.total = states.size();
  for (const auto& s : states) (is_pure(s) ? summary.pure : summary.mixed)++;
  for (const auto& bp : all_bipartitions(n)) {
    BipartitionCounts counts{bp};
    for (const auto& s : states) {
      switch (classify_entanglement(s, bp).kind) {
        case EntanglementKind::Product: ++counts.product; break;
        case EntanglementKind::CorrelatedSeparable: ++counts.correlated; break;
        case EntanglementKind::Entangled: ++counts.entangled; break;
      }
    }
    summary.bipartitions.push_back(std::move(counts));
  }
  return summary;
}

}  // namespace toytheory
