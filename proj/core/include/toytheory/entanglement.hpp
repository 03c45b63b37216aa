#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "toytheory/epistemic_core.hpp"
#include "toytheory/mixture_superposition.hpp"

namespace toytheory {

Submodule local_part(const Submodule& v, const PhaseSpace& space, const std::set<std::size_t>& side);
bool is_product(const EpistemicState& s, const Bipartition& bp);

enum class EntanglementKind { Product, CorrelatedSeparable, Entangled };
std::string_view kind_name(EntanglementKind kind);

struct EntanglementClass {
  EntanglementKind kind;
  // Present for CorrelatedSeparable: a product-V family that mixes back to the state.
  std::optional<StateFamily> witness;
};

EntanglementClass classify_entanglement(const EpistemicState& s, const Bipartition& bp);

// Isotropic submodules of the phase space whose vectors live on the given systems.
std::vector<Submodule> isotropic_submodules(const PhaseSpace& space,
                                            const std::set<std::size_t>& systems);

// Per-system injection of {0,1} into the labels {1,2,3,4}: (image of 0, image of 1).
using Injection = std::array<int, 2>;
EpistemicState cat_state(std::size_t systems, const std::vector<std::pair<Injection, Injection>>& injections);
EpistemicState cat_state(std::size_t systems);

}  // namespace toytheory
