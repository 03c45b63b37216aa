#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "toytheory/epistemic_core.hpp"

namespace toytheory {

// The ontic map m -> S m + a.
class SymplecticMap {
 public:
  SymplecticMap(const PhaseSpace& space, ModMatrix s, ModVector a);
  static SymplecticMap identity(const PhaseSpace& space);

  const PhaseSpace& space() const noexcept { return space_; }
  const ModMatrix& matrix() const noexcept { return s_; }
  const ModVector& displacement() const noexcept { return a_; }
  ModVector operator()(const ModVector& m) const;

  friend bool operator==(const SymplecticMap&, const SymplecticMap&) = default;

 private:
  PhaseSpace space_;
  ModMatrix s_;
  ModVector a_;
};

bool is_symplectic(const ModMatrix& s, Modulus d);
EpistemicState apply(const SymplecticMap& t, const EpistemicState& s);
// compose(t1, t2) applies t2 first.
SymplecticMap compose(const SymplecticMap& t1, const SymplecticMap& t2);
SymplecticMap invert(const SymplecticMap& t);

SymplecticMap toy_cnot(std::size_t control, std::size_t target, const PhaseSpace& space);
SymplecticMap fourier(std::size_t system, const PhaseSpace& space);
SymplecticMap phase_shear(std::size_t system, const PhaseSpace& space);
SymplecticMap swap_systems(std::size_t i, std::size_t j, const PhaseSpace& space);
SymplecticMap local_map(std::size_t system, const std::array<Scalar, 4>& block, const PhaseSpace& space);
SymplecticMap displacement(const ModVector& a, const PhaseSpace& space);

EpistemicState irreversible_apply(const SymplecticMap& t, const EpistemicState& ancilla,
                                  const EpistemicState& s);

// d=2 permutation of the 4^N ontic states; index = sum (label-1) 4^(N-1-i).
class OnticPermutation {
 public:
  OnticPermutation(std::size_t systems, std::vector<std::uint32_t> targets);
  static OnticPermutation identity(std::size_t systems);
  static OnticPermutation from_map(const SymplecticMap& t);
  static OnticPermutation local(const std::vector<std::array<int, 4>>& per_system);
  static OnticPermutation system_swap(const std::vector<std::size_t>& order);

  std::size_t systems() const noexcept { return systems_; }
  const std::vector<std::uint32_t>& targets() const noexcept { return targets_; }
  std::uint32_t operator()(std::uint32_t index) const { return targets_.at(index); }

  friend bool operator==(const OnticPermutation&, const OnticPermutation&) = default;

 private:
  std::size_t systems_;
  std::vector<std::uint32_t> targets_;
};

// p2 after p1.
OnticPermutation then(const OnticPermutation& p1, const OnticPermutation& p2);
OnticPermutation inverse(const OnticPermutation& p);

std::uint32_t label_index(const std::vector<int>& labels);
std::vector<int> index_labels(std::uint32_t index, std::size_t systems);
ModVector labels_to_point(const std::vector<int>& labels);
std::vector<int> point_to_labels(const ModVector& m);

bool permutation_is_valid(const OnticPermutation& p);

struct NonEntanglingDecomposition {
  // Output system i carries input system order[i], relabelled by locals[i].
  std::vector<std::size_t> order;
  std::vector<std::array<int, 4>> locals;
  OnticPermutation recompose() const;
};
struct EntanglingWitness {
  EpistemicState input;
  std::vector<ModVector> image;
};
using DecompositionResult = std::variant<NonEntanglingDecomposition, EntanglingWitness>;
DecompositionResult decompose_non_entangling(const OnticPermutation& p);

}  // namespace toytheory
