#pragma once

#include <string>
#include <string_view>

#include "toytheory/epistemic_core.hpp"

namespace toytheory {

enum class Formalism { General, Stabilizer, Grid };

std::string_view formalism_name(Formalism f);
Formalism parse_formalism(std::string_view name);

struct StateFile {
  Formalism formalism;
  ValidityVerdict verdict;
};

// Parses any of the three StateFile layouts. Malformed JSON or missing
// fields raise InvalidArgument; a well-formed file describing an invalid
// state comes back with an empty verdict and the violated condition.
StateFile parse_state_file(std::string_view json_text);
EpistemicState parse_state(std::string_view json_text);

std::string serialize_state(const EpistemicState& s, Formalism formalism = Formalism::General);

}  // namespace toytheory
