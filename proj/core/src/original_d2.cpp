#include "toytheory/original_d2.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numeric>

#include "toytheory/catalog.hpp"
#include "toytheory/errors.hpp"
#include "toytheory/transformations.hpp"

namespace toytheory::original {

namespace {

const Modulus kTwo(2);

std::vector<OnticLabelState> all_ontic_states(std::size_t systems) {
  std::vector<OnticLabelState> out;
  for (std::uint32_t i = 0; i < (std::uint32_t{1} << (2 * systems)); ++i) out.push_back(index_labels(i, systems));
  return out;
}

}  // namespace

SetEpistemicState::SetEpistemicState(std::size_t systems, std::set<OnticLabelState> basis)
    : systems_(systems), basis_(std::move(basis)) {
  if (systems == 0) fail(ErrorCode::InvalidArgument, "need at least one system");
  for (const auto& o : basis_) {
    if (o.size() != systems) fail(ErrorCode::DimensionMismatch, "ontic state has the wrong number of systems");
    for (int l : o)
      if (l < 1 || l > 4) fail(ErrorCode::InvalidArgument, "ontic labels are 1..4");
  }
}

SetEpistemicState SetEpistemicState::from_general(const EpistemicState& s) {
  if (s.modulus().value() != 2) fail(ErrorCode::NotD2, "the original formalism is d=2 only");
  std::set<OnticLabelState> basis;
  for (const auto& m : support(s).elements()) basis.insert(point_to_labels(m));
  return SetEpistemicState(s.space().n(), std::move(basis));
}

std::vector<ModVector> SetEpistemicState::points() const {
  std::vector<ModVector> out;
  for (const auto& o : basis_) out.push_back(labels_to_point(o));
  return out;
}

ValidityVerdict validity(const SetEpistemicState& e) {
  return state_from_support(PhaseSpace(e.systems(), kTwo), e.points());
}

bool is_valid_state(const SetEpistemicState& e) { return validity(e).valid(); }

EpistemicState to_general(const SetEpistemicState& e) {
  auto verdict = validity(e);
  if (!verdict.valid()) fail(ErrorCode::InvalidArgument, "invalid epistemic state: " + verdict.reason);
  return *verdict.state;
}

bool is_canonical(const QuestionSet& qs, std::size_t systems) {
  if (qs.size() != 2 * systems) {
    fail(ErrorCode::WrongQuestionCount, "expected " + std::to_string(2 * systems) + " questions");
  }
  std::map<std::vector<bool>, int> hits;
  for (const auto& o : all_ontic_states(systems)) {
    std::vector<bool> answers;
    for (const auto& q : qs) answers.push_back(q.yes.count(o) > 0);
    ++hits[answers];
  }
  if (hits.size() != (std::size_t{1} << qs.size())) return false;
  return std::all_of(hits.begin(), hits.end(), [](const auto& kv) { return kv.second == 1; });
}

SetEpistemicState ontic_basis_from_answers(const QuestionSet& qs, const std::map<std::size_t, bool>& answers,
                                           std::size_t systems) {
  std::set<OnticLabelState> basis;
  for (const auto& o : all_ontic_states(systems)) {
    bool keep = true;
    for (const auto& [index, yes] : answers) {
      if (index >= qs.size()) fail(ErrorCode::IndexError, "answer refers to a missing question");
      keep = keep && (qs[index].yes.count(o) > 0) == yes;
    }
    if (keep) basis.insert(o);
  }
  return SetEpistemicState(systems, std::move(basis));
}

double Fidelity::value() const {
  if (size_product == 0) return 0.0;
  return static_cast<double>(overlap) / std::sqrt(static_cast<double>(size_product));
}

__extension__ using Wide = unsigned __int128;

bool operator==(const Fidelity& a, const Fidelity& b) {
  // overlap_a^2 / product_a == overlap_b^2 / product_b
  return static_cast<Wide>(a.overlap) * a.overlap * b.size_product ==
         static_cast<Wide>(b.overlap) * b.overlap * a.size_product;
}

bool operator<(const Fidelity& a, const Fidelity& b) {
  return static_cast<Wide>(a.overlap) * a.overlap * b.size_product <
         static_cast<Wide>(b.overlap) * b.overlap * a.size_product;
}

Fidelity fidelity(const SetEpistemicState& a, const SetEpistemicState& b) {
  if (a.systems() != b.systems()) fail(ErrorCode::DimensionMismatch, "states on different systems");
  std::uint64_t overlap = 0;
  for (const auto& o : a.basis()) overlap += b.contains(o);
  return {overlap, static_cast<std::uint64_t>(a.size()) * b.size()};
}

const std::vector<SetEpistemicState>& valid_states(std::size_t systems) {
  static std::mutex guard;
  static std::map<std::size_t, std::vector<SetEpistemicState>> cache;
  std::lock_guard lock(guard);
  auto it = cache.find(systems);
  if (it == cache.end()) {
    std::vector<SetEpistemicState> out;
    for (const auto& s : state_catalog(kTwo, systems)) out.push_back(SetEpistemicState::from_general(s));
    std::sort(out.begin(), out.end());
    it = cache.emplace(systems, std::move(out)).first;
  }
  return it->second;
}

std::vector<SetEpistemicState> candidates_within(const SetEpistemicState& cell) {
  std::vector<SetEpistemicState> out;
  for (const auto& c : valid_states(cell.systems())) {
    if (std::includes(cell.basis().begin(), cell.basis().end(), c.basis().begin(), c.basis().end())) {
      out.push_back(c);
    }
  }
  return out;
}

CoarseResult coarse_measure(const std::vector<SetEpistemicState>& partition, const SetEpistemicState& s,
                            const OnticLabelState& ontic_truth) {
  if (partition.empty()) fail(ErrorCode::NotAPartition, "empty partition");
  const std::size_t n = s.systems();
  std::vector<int> owner(std::size_t{1} << (2 * n), -1);
  for (std::size_t c = 0; c < partition.size(); ++c) {
    if (partition[c].systems() != n) fail(ErrorCode::NotAPartition, "cell on a different number of systems");
    for (const auto& o : partition[c].basis()) {
      auto& slot = owner[label_index(o)];
      if (slot != -1) fail(ErrorCode::NotAPartition, "cells overlap");
      slot = static_cast<int>(c);
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
    fail(ErrorCode::NotAPartition, "cells do not cover every ontic state");
  }
  if (!s.contains(ontic_truth)) fail(ErrorCode::InvalidArgument, "the ontic truth lies outside the state");
  const auto cell = static_cast<std::size_t>(owner[label_index(ontic_truth)]);

  std::optional<SetEpistemicState> best;
  Fidelity best_f{0, 1};
  for (auto& c : candidates_within(partition[cell])) {
    const Fidelity f = fidelity(s, c);
    // Ties go to the smaller support, then to the lexicographically first basis.
    const bool better = !best || best_f < f ||
                        (f == best_f && (c.size() < best->size() || (c.size() == best->size() && c < *best)));
    if (better) {
      best = c;
      best_f = f;
    }
  }
  if (!best) fail(ErrorCode::NotAPartition, "outcome cell contains no valid state");
  return {cell, *best};
}

bool local_equivalence(const SetEpistemicState& a, const SetEpistemicState& b) {
  if (a.systems() != b.systems()) return false;
  const std::size_t n = a.systems();
  if (n > 2) fail(ErrorCode::TooLarge, "local equivalence search covers N <= 2");
  if (a.size() != b.size()) return false;
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p{1, 2, 3, 4};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::vector<std::size_t> choice(n, 0);
  while (true) {
    std::set<OnticLabelState> image;
    for (const auto& o : a.basis()) {
      OnticLabelState m(n);
      for (std::size_t k = 0; k < n; ++k) m[k] = perms[choice[k]][static_cast<std::size_t>(o[k] - 1)];
      image.insert(std::move(m));
    }
    if (image == b.basis()) return true;
    std::size_t k = 0;
    while (k < n && ++choice[k] == perms.size()) choice[k++] = 0;
    if (k == n) return false;
  }
}

}  // namespace toytheory::original
