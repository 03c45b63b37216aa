#pragma once

#include <variant>
#include <vector>

#include "toytheory/epistemic_core.hpp"

namespace toytheory {

// States (V, v_j) sharing one isotropic V; valuations are canonical and distinct.
class StateFamily {
 public:
  StateFamily(const PhaseSpace& space, Submodule known, const std::vector<ModVector>& valuations);
  static StateFamily of(const std::vector<EpistemicState>& members);

  const PhaseSpace& space() const noexcept { return space_; }
  const Submodule& known() const noexcept { return known_; }
  const std::vector<ModVector>& valuations() const noexcept { return valuations_; }
  std::size_t size() const noexcept { return valuations_.size(); }
  EpistemicState member(std::size_t j) const;

 private:
  PhaseSpace space_;
  Submodule known_;
  std::vector<ModVector> valuations_;
};

struct Constant {
  Scalar value;
  friend bool operator==(const Constant&, const Constant&) = default;
};
struct TotallyUnknown {
  friend bool operator==(const TotallyUnknown&, const TotallyUnknown&) = default;
};
struct PartiallyKnown {
  friend bool operator==(const PartiallyKnown&, const PartiallyKnown&) = default;
};
using ObservableClass = std::variant<Constant, TotallyUnknown, PartiallyKnown>;

ObservableClass classify(const Observable& f, const StateFamily& fam);
// Observables of V on which every member agrees.
Submodule constant_submodule(const StateFamily& fam);

EpistemicState mix(const StateFamily& fam);

// The observable f_k that is totally unknown, with V = W + span{f_k}.
struct SuperpositionShape {
  Submodule constant;
  Observable unknown;
};
SuperpositionShape superposition_shape(const StateFamily& fam);

EpistemicState superpose(const StateFamily& fam, const Observable& f_new, std::size_t phase);
std::vector<Observable> enumerate_superposition_choices(const StateFamily& fam);

struct PureDecomposition {
  Submodule extended;
  std::vector<ModVector> valuations;
  StateFamily family(const PhaseSpace& space) const { return {space, extended, valuations}; }
};
PureDecomposition decompose_into_pure(const EpistemicState& s);

}  // namespace toytheory
