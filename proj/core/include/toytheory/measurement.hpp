#pragma once

#include <random>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "toytheory/epistemic_core.hpp"

namespace toytheory {

using Probability = boost::rational<std::int64_t>;

// Joint measurement of the isotropic submodule V_pi.
class Measurement {
 public:
  explicit Measurement(Submodule observables);
  Measurement(const PhaseSpace& space, const std::vector<Observable>& observables);

  const Submodule& observables() const noexcept { return observables_; }
  const Submodule& cell_direction() const noexcept { return complement_; }

 private:
  Submodule observables_;
  Submodule complement_;
};

struct Outcome {
  // Canonical representative of the outcome class modulo V_pi-perp.
  ModVector valuation;
  Probability probability;
};

std::vector<Outcome> outcomes(const Measurement& m, const EpistemicState& s);
Probability outcome_probability(const Measurement& m, const ModVector& v_pi, const EpistemicState& s);
// {f in V : [f, g] = 0 for every g in V_pi}
Submodule commuting_part(const Measurement& m, const EpistemicState& s);
EpistemicState update(const Measurement& m, const ModVector& v_pi, const EpistemicState& s);
std::pair<Outcome, EpistemicState> sample(const Measurement& m, const EpistemicState& s,
                                          std::mt19937_64& rng);
bool partition_is_measurement(const std::vector<EpistemicState>& cells);

}  // namespace toytheory
