#include "toytheory/measurement.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "toytheory/errors.hpp"

namespace toytheory {

Measurement::Measurement(Submodule observables)
    : observables_(std::move(observables)), complement_(orthogonal_complement(observables_)) {
  if (!is_isotropic(observables_)) {
    fail(ErrorCode::NotIsotropic, "measured observables do not commute");
  }
}

Measurement::Measurement(const PhaseSpace& space, const std::vector<Observable>& observables)
    : Measurement(howell_form(observables, space.modulus(), space.dim())) {}

namespace {

void require_same_space(const Measurement& m, const EpistemicState& s) {
  if (m.observables().ambient_dim() != s.space().dim() ||
      m.observables().modulus() != s.modulus()) {
    fail(ErrorCode::DimensionMismatch, "measurement and state live on different phase spaces");
  }
}

ModVector image(const std::vector<ModVector>& gens, const ModVector& x, Modulus d) {
  ModVector out(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) out[i] = dot(gens[i], x, d);
  return out;
}

}  // namespace

std::vector<Outcome> outcomes(const Measurement& m, const EpistemicState& s) {
  require_same_space(m, s);
  const Modulus d = s.modulus();
  const auto& gens = m.observables().basis();
  // Reachable shifts of the valuation tuple, each with one witness in V-perp.
  std::map<ModVector, ModVector> reached;
  std::deque<ModVector> queue;
  reached.emplace(ModVector(gens.size()), s.space().zero());
  queue.push_back(ModVector(gens.size()));
  const auto& dirs = s.known_complement().basis();
  std::vector<ModVector> dir_images;
  for (const auto& b : dirs) dir_images.push_back(image(gens, b, d));
  while (!queue.empty()) {
    const ModVector tau = queue.front();
    queue.pop_front();
    const ModVector u = reached.at(tau);
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      ModVector next = add(tau, dir_images[j], d);
      if (reached.count(next)) continue;
      reached.emplace(next, add(u, dirs[j], d));
      queue.push_back(std::move(next));
    }
  }
  const Probability each(1, static_cast<std::int64_t>(reached.size()));
  std::vector<Outcome> out;
  for (const auto& [tau, u] : reached) {
    out.push_back({m.cell_direction().reduce(add(s.valuation(), u, d)), each});
  }
  std::sort(out.begin(), out.end(),
            [](const Outcome& a, const Outcome& b) { return a.valuation < b.valuation; });
  return out;
}

Probability outcome_probability(const Measurement& m, const ModVector& v_pi,
                                const EpistemicState& s) {
  require_same_space(m, s);
  const auto meet = coset_intersect(support(s), AffineCoset(m.cell_direction(), v_pi));
  if (!meet) return Probability(0);
  return Probability(static_cast<std::int64_t>(meet->cardinality()),
                     static_cast<std::int64_t>(s.known_complement().cardinality()));
}

Submodule commuting_part(const Measurement& m, const EpistemicState& s) {
  require_same_space(m, s);
  return intersect(s.known(), symplectic_complement(m.observables()));
}

EpistemicState update(const Measurement& m, const ModVector& v_pi, const EpistemicState& s) {
  require_same_space(m, s);
  if (outcome_probability(m, v_pi, s) == Probability(0)) {
    fail(ErrorCode::IncompatibleOutcome, "outcome " + to_string(v_pi) + " has probability 0");
  }
  const Submodule commuting = commuting_part(m, s);
  const Submodule known = sum(m.observables(), commuting);
  const auto meet = coset_intersect(AffineCoset(m.cell_direction(), v_pi),
                                    AffineCoset(orthogonal_complement(commuting), s.valuation()));
  if (!meet) {
    fail(ErrorCode::IncompatibleOutcome, "outcome disagrees with the retained knowledge");
  }
  EpistemicState out = make_state(s.space(), known, meet->offset());
  if (out.known_complement() != meet->direction()) {
    fail(ErrorCode::InvalidArgument, "update produced inconsistent support");
  }
  return out;
}

std::pair<Outcome, EpistemicState> sample(const Measurement& m, const EpistemicState& s,
                                          std::mt19937_64& rng) {
  const auto outs = outcomes(m, s);
  std::int64_t denom = 1;
  for (const auto& o : outs) denom = std::lcm(denom, o.probability.denominator());
  const auto draw = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(denom));
  std::int64_t acc = 0;
  for (const auto& o : outs) {
    acc += o.probability.numerator() * (denom / o.probability.denominator());
    if (draw < acc) return {o, update(m, o.valuation, s)};
  }
  return {outs.back(), update(m, outs.back().valuation, s)};
}

bool partition_is_measurement(const std::vector<EpistemicState>& cells) {
  if (cells.empty()) fail(ErrorCode::NotAPartition, "no cells");
  const PhaseSpace& space = cells.front().space();
  std::uint64_t total = 0;
  std::vector<bool> covered(space.size(), false);
  for (const auto& c : cells) {
    if (!(c.space() == space)) fail(ErrorCode::NotAPartition, "cells on different phase spaces");
    for (const auto& pt : support(c).elements()) {
      const auto idx = point_index(pt, space.modulus());
      if (covered[idx]) fail(ErrorCode::NotAPartition, "cells overlap at " + to_string(pt));
      covered[idx] = true;
      ++total;
    }
  }
  if (total != space.size()) fail(ErrorCode::NotAPartition, "cells do not cover phase space");
  return std::all_of(cells.begin(), cells.end(),
                     [&](const EpistemicState& c) { return c.known() == cells.front().known(); });
}

}  // namespace toytheory
