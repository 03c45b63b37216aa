#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "toytheory/epistemic_core.hpp"

namespace toytheory::stab {

enum class Letter : std::uint8_t { I, X, Y, Z };

// Signed toy Pauli word. The toy group is abelian with Y = ZX, so products
// carry no extra phase.
class PauliWord {
 public:
  PauliWord(bool negative, std::vector<Letter> letters);
  static PauliWord parse(const std::string& text);
  static PauliWord identity(std::size_t systems);
  static PauliWord from_observable(const Observable& f, bool negative = false);

  bool negative() const noexcept { return negative_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t systems() const noexcept { return letters_.size(); }
  bool is_identity_letters() const noexcept;
  // Binary vector (q_1, p_1, ...): X sets q, Z sets p, Y sets both.
  Observable observable() const;
  PauliWord negated() const { return {!negative_, letters_}; }
  std::string str() const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;
  friend auto operator<=>(const PauliWord&, const PauliWord&) = default;

 private:
  bool negative_;
  std::vector<Letter> letters_;
};

PauliWord operator*(const PauliWord& a, const PauliWord& b);
bool commutes(const PauliWord& g, const PauliWord& h);
// +1 or -1 eigenvalue of the diagonal toy operator on an ontic state (labels 1..4).
int eigenvalue(const PauliWord& g, const std::vector<int>& labels);

class ToyStabilizerGroup {
 public:
  static ToyStabilizerGroup from_generators(std::size_t systems, const std::vector<PauliWord>& gens);
  static ToyStabilizerGroup trivial(std::size_t systems);

  std::size_t systems() const noexcept { return systems_; }
  const std::vector<PauliWord>& generators() const noexcept { return generators_; }
  std::size_t rank() const noexcept { return generators_.size(); }
  bool is_pure() const noexcept { return generators_.size() == systems_; }
  // Sign with which the letter string of g appears in the group, if at all.
  std::optional<bool> member_sign(const PauliWord& g) const;
  bool contains(const PauliWord& g) const;
  Submodule unsigned_span() const;
  std::vector<PauliWord> elements() const;

  friend bool operator==(const ToyStabilizerGroup&, const ToyStabilizerGroup&) = default;
  friend auto operator<=>(const ToyStabilizerGroup&, const ToyStabilizerGroup&) = default;

 private:
  ToyStabilizerGroup(std::size_t systems, std::vector<PauliWord> gens)
      : systems_(systems), generators_(std::move(gens)) {}
  std::size_t systems_;
  std::vector<PauliWord> generators_;
};

std::string to_string(const ToyStabilizerGroup& g);

std::vector<std::vector<int>> stabilized_support(const ToyStabilizerGroup& s);
EpistemicState to_general(const ToyStabilizerGroup& s);
ToyStabilizerGroup from_general(const EpistemicState& s);

bool is_rephasing(const ToyStabilizerGroup& s, const ToyStabilizerGroup& t);
ToyStabilizerGroup stab_mix(const ToyStabilizerGroup& s, const ToyStabilizerGroup& t);
std::vector<ToyStabilizerGroup> stab_superpose(const ToyStabilizerGroup& s, const ToyStabilizerGroup& t);
ToyStabilizerGroup stab_measure(const ToyStabilizerGroup& s, const PauliWord& g, int outcome_sign);
bool stab_factorizes(const ToyStabilizerGroup& s, const Bipartition& bp);

// Pure rephasings of s whose mixture chain reproduces s.
std::vector<ToyStabilizerGroup> stab_decompose(const ToyStabilizerGroup& s);

}  // namespace toytheory::stab
