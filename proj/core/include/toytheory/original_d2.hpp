#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "toytheory/epistemic_core.hpp"

namespace toytheory::original {

// Labels 1..4 per system; label - 1 = q + 2p.
using OnticLabelState = std::vector<int>;

class SetEpistemicState {
 public:
  SetEpistemicState(std::size_t systems, std::set<OnticLabelState> basis);
  static SetEpistemicState from_general(const EpistemicState& s);

  std::size_t systems() const noexcept { return systems_; }
  const std::set<OnticLabelState>& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return basis_.size(); }
  bool contains(const OnticLabelState& o) const { return basis_.count(o) > 0; }
  std::vector<ModVector> points() const;

  friend bool operator==(const SetEpistemicState&, const SetEpistemicState&) = default;
  friend auto operator<=>(const SetEpistemicState&, const SetEpistemicState&) = default;

 private:
  std::size_t systems_;
  std::set<OnticLabelState> basis_;
};

ValidityVerdict validity(const SetEpistemicState& e);
bool is_valid_state(const SetEpistemicState& e);
EpistemicState to_general(const SetEpistemicState& e);

// A yes/no question: the answer is "yes" on the listed ontic states.
struct Question {
  std::set<OnticLabelState> yes;
};
using QuestionSet = std::vector<Question>;

bool is_canonical(const QuestionSet& qs, std::size_t systems);
// answers maps question index to the answer (true = yes).
SetEpistemicState ontic_basis_from_answers(const QuestionSet& qs, const std::map<std::size_t, bool>& answers,
                                           std::size_t systems);

// |O1 ∩ O2| / sqrt(|O1| |O2|), kept exact.
struct Fidelity {
  std::uint64_t overlap;
  std::uint64_t size_product;
  double value() const;
  friend bool operator==(const Fidelity& a, const Fidelity& b);
  friend bool operator<(const Fidelity& a, const Fidelity& b);
};
Fidelity fidelity(const SetEpistemicState& a, const SetEpistemicState& b);

struct CoarseResult {
  std::size_t cell;
  SetEpistemicState state;
};
CoarseResult coarse_measure(const std::vector<SetEpistemicState>& partition, const SetEpistemicState& s,
                            const OnticLabelState& ontic_truth);
// Valid states contained in the given cell, in catalog order.
std::vector<SetEpistemicState> candidates_within(const SetEpistemicState& cell);

bool local_equivalence(const SetEpistemicState& a, const SetEpistemicState& b);

const std::vector<SetEpistemicState>& valid_states(std::size_t systems);

}  // namespace toytheory::original
