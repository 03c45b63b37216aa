#include "toytheory/entanglement.hpp"

#include <set>

#include "toytheory/errors.hpp"
#include "toytheory/measurement.hpp"

namespace toytheory {

namespace {

constexpr std::uint64_t kSearchLimit = 10000;

}  // namespace

Submodule local_part(const Submodule& v, const PhaseSpace& space, const std::set<std::size_t>& side) {
  return intersect(v, coordinate_submodule(space, side));
}

bool is_product(const EpistemicState& s, const Bipartition& bp) {
  const Submodule& v = s.known();
  return sum(local_part(v, s.space(), bp.a), local_part(v, s.space(), bp.b)) == v;
}

std::string_view kind_name(EntanglementKind kind) {
  switch (kind) {
    case EntanglementKind::Product: return "product";
    case EntanglementKind::CorrelatedSeparable: return "correlated";
    case EntanglementKind::Entangled: return "entangled";
  }
  return "unknown";
}

std::vector<Submodule> isotropic_submodules(const PhaseSpace& space,
                                            const std::set<std::size_t>& systems) {
  const Modulus d = space.modulus();
  const auto vectors = coordinate_submodule(space, systems).elements(kSearchLimit);
  std::set<Submodule> found{Submodule::zero(d, space.dim())};
  std::vector<Submodule> frontier{Submodule::zero(d, space.dim())};
  while (!frontier.empty()) {
    std::vector<Submodule> next;
    for (const auto& s : frontier) {
      for (const auto& x : vectors) {
        if (s.contains(x)) continue;
        bool commutes = true;
        for (const auto& b : s.basis()) {
          if (symplectic_form(x, b, d) != 0) {
            commutes = false;
            break;
          }
        }
        if (!commutes) continue;
        Submodule grown = sum(s, howell_form(std::vector{x}, d, space.dim()));
        if (found.insert(grown).second) next.push_back(std::move(grown));
      }
    }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

EntanglementClass classify_entanglement(const EpistemicState& s, const Bipartition& bp) {
  if (is_product(s, bp)) return {EntanglementKind::Product, std::nullopt};
  if (is_pure(s)) return {EntanglementKind::Entangled, std::nullopt};
  if (s.space().size() > kSearchLimit) {
    fail(ErrorCode::SearchSpaceTooLarge, "separability search is limited to d^{2n} <= 10^4");
  }
  const Submodule& w = s.known();
  const auto sides_a = isotropic_submodules(s.space(), bp.a);
  const auto sides_b = isotropic_submodules(s.space(), bp.b);
  for (const auto& va : sides_a) {
    for (const auto& vb : sides_b) {
      const Submodule vp = sum(va, vb);
      if (vp == w || !is_subset(w, vp)) continue;
      std::vector<ModVector> vals;
      for (const auto& o : outcomes(Measurement(vp), s)) vals.push_back(o.valuation);
      StateFamily family(s.space(), vp, vals);
      try {
        if (mix(family) == s) return {EntanglementKind::CorrelatedSeparable, family};
      } catch (const PartiallyKnownError&) {
      }
    }
  }
  return {EntanglementKind::Entangled, std::nullopt};
}

namespace {

ModVector label_vector(int label) {
  const int k = label - 1;
  return ModVector({k % 2, k / 2}, Modulus(2));
}

void check_injection(const Injection& pi) {
  for (int x : pi) {
    if (x < 1 || x > 4) fail(ErrorCode::BadInjection, "injection values must be labels 1..4");
  }
  if (pi[0] == pi[1]) fail(ErrorCode::BadInjection, "injection is not injective");
}

}  // namespace

EpistemicState cat_state(std::size_t systems,
                         const std::vector<std::pair<Injection, Injection>>& injections) {
  if (systems < 2) fail(ErrorCode::InvalidArgument, "cat states need at least two systems");
  if (injections.size() != systems) fail(ErrorCode::BadInjection, "one injection pair per system");
  for (const auto& [pi, pi_prime] : injections) {
    check_injection(pi);
    check_injection(pi_prime);
    for (int x : pi)
      for (int y : pi_prime)
        if (x == y) fail(ErrorCode::BadInjection, "injection ranges overlap");
  }
  const PhaseSpace space(systems, Modulus(2));
  std::vector<ModVector> points;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (systems - 1)); ++bits) {
    for (int branch = 0; branch < 2; ++branch) {
      ModVector m(space.dim());
      int parity = 0;
      for (std::size_t i = 0; i < systems; ++i) {
        int x = 0;
        if (i + 1 < systems) {
          x = static_cast<int>((bits >> i) & 1u);
          parity ^= x;
        } else {
          x = parity;
        }
        const auto& inj = branch == 0 ? injections[i].first : injections[i].second;
        const ModVector cell = label_vector(inj[static_cast<std::size_t>(x)]);
        m[2 * i] = cell[0];
        m[2 * i + 1] = cell[1];
      }
      points.push_back(std::move(m));
    }
  }
  auto verdict = state_from_support(space, points);
  if (!verdict.valid()) fail(ErrorCode::BadInjection, "injections give an invalid state: " + verdict.reason);
  return *verdict.state;
}

EpistemicState cat_state(std::size_t systems) {
  return cat_state(systems, std::vector<std::pair<Injection, Injection>>(
                                systems, {Injection{1, 2}, Injection{3, 4}}));
}

}  // namespace toytheory
