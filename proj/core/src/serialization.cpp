#include "toytheory/serialization.hpp"

#include <json.hpp>

#include "toytheory/errors.hpp"
#include "toytheory/original_d2.hpp"
#include "toytheory/stabilizer_d2.hpp"

namespace toytheory {

using Json = nlohmann::ordered_json;

std::string_view formalism_name(Formalism f) {
  switch (f) {
    case Formalism::General: return "general";
    case Formalism::Stabilizer: return "stabilizer";
    case Formalism::Grid: return "grid";
  }
  return "general";
}

Formalism parse_formalism(std::string_view name) {
  if (name == "general") return Formalism::General;
  if (name == "stabilizer") return Formalism::Stabilizer;
  if (name == "grid") return Formalism::Grid;
  fail(ErrorCode::InvalidArgument, "unknown formalism '" + std::string(name) + "'");
}

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("bad field '") + key + "': " + e.what());
  }
}

ValidityVerdict parse_general(const Json& j) {
  const PhaseSpace space(field<std::size_t>(j, "n"), Modulus(field<Scalar>(j, "d")));
  std::vector<ModVector> gens;
  for (const auto& g : field<std::vector<std::vector<Scalar>>>(j, "generators")) gens.push_back(space.vec(g));
  const ModVector v = j.contains("valuation") ? space.vec(field<std::vector<Scalar>>(j, "valuation")) : space.zero();
  const Submodule known = howell_form(gens, space.modulus(), space.dim());
  if (!is_isotropic(known)) return {std::nullopt, kNotIsotropicSupport};
  return {make_state(space, known, v), {}};
}

ValidityVerdict parse_stabilizer(const Json& j) {
  if (j.contains("d") && field<Scalar>(j, "d") != 2) fail(ErrorCode::NotD2, "stabilizer files are d=2");
  const auto n = field<std::size_t>(j, "n");
  std::vector<stab::PauliWord> words;
  for (const auto& w : field<std::vector<std::string>>(j, "generators")) words.push_back(stab::PauliWord::parse(w));
  try {
    return {stab::to_general(stab::ToyStabilizerGroup::from_generators(n, words)), {}};
  } catch (const ToyError& e) {
    if (e.code() == ErrorCode::InvalidGroup) return {std::nullopt, e.what()};
    throw;
  }
}

ValidityVerdict parse_grid(const Json& j) {
  if (j.contains("d") && field<Scalar>(j, "d") != 2) fail(ErrorCode::NotD2, "grid files are d=2");
  const auto n = field<std::size_t>(j, "n");
  std::set<original::OnticLabelState> basis;
  for (auto& o : field<std::vector<std::vector<int>>>(j, "support")) basis.insert(o);
  return original::validity(original::SetEpistemicState(n, std::move(basis)));
}

}  // namespace

StateFile parse_state_file(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::InvalidArgument, "state file must be a JSON object");
  const Formalism f = j.contains("formalism") ? parse_formalism(field<std::string>(j, "formalism"))
                                              : Formalism::General;
  switch (f) {
    case Formalism::General: return {f, parse_general(j)};
    case Formalism::Stabilizer: return {f, parse_stabilizer(j)};
    case Formalism::Grid: return {f, parse_grid(j)};
  }
  return {f, {}};
}

EpistemicState parse_state(std::string_view json_text) {
  auto file = parse_state_file(json_text);
  if (!file.verdict.valid()) fail(ErrorCode::InvalidArgument, "invalid state: " + file.verdict.reason);
  return *file.verdict.state;
}

std::string serialize_state(const EpistemicState& s, Formalism formalism) {
  Json j;
  j["formalism"] = formalism_name(formalism);
  switch (formalism) {
    case Formalism::General: {
      j["d"] = s.modulus().value();
      j["n"] = s.space().n();
      Json gens = Json::array();
      for (const auto& g : s.known().basis()) gens.push_back(g.entries());
      j["generators"] = gens;
      j["valuation"] = s.valuation().entries();
      break;
    }
    case Formalism::Stabilizer: {
      j["n"] = s.space().n();
      Json gens = Json::array();
      const auto group = stab::from_general(s);
      for (const auto& g : group.generators()) gens.push_back(g.str());
      j["generators"] = gens;
      break;
    }
    case Formalism::Grid: {
      const auto set = original::SetEpistemicState::from_general(s);
      j["d"] = 2;
      j["n"] = s.space().n();
      Json support = Json::array();
      for (const auto& o : set.basis()) support.push_back(o);
      j["support"] = support;
      break;
    }
  }
  return j.dump();
}

}  // namespace toytheory
