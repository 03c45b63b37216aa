#include "toytheory/mixture_superposition.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "toytheory/errors.hpp"
#include "toytheory/measurement.hpp"

namespace toytheory {

namespace {

constexpr std::uint64_t kExhaustiveObservableLimit = 4096;
constexpr int kRandomCertificates = 256;

}  // namespace

StateFamily::StateFamily(const PhaseSpace& space, Submodule known,
                         const std::vector<ModVector>& valuations)
    : space_(space), known_(std::move(known)) {
  if (valuations.empty()) fail(ErrorCode::BadFamilyShape, "family has no members");
  // Validates isotropy and canonicalizes each valuation.
  for (const auto& v : valuations) valuations_.push_back(make_state(space_, known_, v).valuation());
  std::vector<ModVector> unique;
  for (const auto& v : valuations_) {
    if (std::find(unique.begin(), unique.end(), v) == unique.end()) unique.push_back(v);
  }
  valuations_ = std::move(unique);
}

StateFamily StateFamily::of(const std::vector<EpistemicState>& members) {
  if (members.empty()) fail(ErrorCode::BadFamilyShape, "family has no members");
  std::vector<ModVector> vals;
  for (const auto& s : members) {
    if (!(s.space() == members.front().space()) || s.known() != members.front().known()) {
      fail(ErrorCode::BadFamilyShape, "family members must share the same known submodule");
    }
    vals.push_back(s.valuation());
  }
  return StateFamily(members.front().space(), members.front().known(), vals);
}

EpistemicState StateFamily::member(std::size_t j) const {
  if (j >= valuations_.size()) fail(ErrorCode::IndexError, "family member out of range");
  return make_state(space_, known_, valuations_[j]);
}

ObservableClass classify(const Observable& f, const StateFamily& fam) {
  const Modulus d = fam.space().modulus();
  if (f.size() != fam.space().dim()) fail(ErrorCode::DimensionMismatch, "observable length");
  if (!fam.known().contains(f)) fail(ErrorCode::NotInV, to_string(f) + " is not a known observable");
  std::set<Scalar> values;
  for (const auto& v : fam.valuations()) values.insert(dot(f, v, d));
  if (values.size() == 1) return Constant{*values.begin()};
  const auto attainable = attainable_values(f, d);
  if (std::equal(values.begin(), values.end(), attainable.begin(), attainable.end())) {
    return TotallyUnknown{};
  }
  return PartiallyKnown{};
}

Submodule constant_submodule(const StateFamily& fam) {
  const Modulus d = fam.space().modulus();
  std::vector<ModVector> diffs;
  for (const auto& v : fam.valuations()) diffs.push_back(sub(v, fam.valuations().front(), d));
  const Submodule spread = howell_form(diffs, d, fam.space().dim());
  return intersect(fam.known(), orthogonal_complement(spread));
}

namespace {

std::vector<Observable> certificate_candidates(const StateFamily& fam, const Submodule& constant) {
  const Submodule& v = fam.known();
  if (v.cardinality() <= kExhaustiveObservableLimit) return v.elements();
  std::vector<Observable> out;
  for (const auto& b : v.basis())
    if (!constant.contains(b)) out.push_back(b);
  std::mt19937_64 rng(0x5eedf00dULL);
  const Modulus d = fam.space().modulus();
  for (int k = 0; k < kRandomCertificates; ++k) {
    ModVector f(v.ambient_dim());
    for (const auto& b : v.basis()) {
      f = add(f, scale(static_cast<Scalar>(rng() % static_cast<std::uint64_t>(d.value())), b, d), d);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

EpistemicState mix(const StateFamily& fam) {
  if (fam.size() == 1) return fam.member(0);
  const Modulus d = fam.space().modulus();
  const Submodule constant = constant_submodule(fam);
  for (const auto& f : certificate_candidates(fam, constant)) {
    if (std::holds_alternative<PartiallyKnown>(classify(f, fam))) {
      throw PartiallyKnownError({f}, "observable " + to_string(f) + " is partially known");
    }
  }
  // Per-observable checks can pass while the valuations still miss joint classes.
  std::set<ModVector> tuples;
  for (const auto& v : fam.valuations()) {
    ModVector t(fam.known().basis().size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = dot(fam.known().basis()[i], v, d);
    tuples.insert(std::move(t));
  }
  const std::uint64_t needed = fam.known().cardinality() / constant.cardinality();
  if (tuples.size() != needed) {
    std::vector<ModVector> witness;
    for (const auto& b : fam.known().basis())
      if (!constant.contains(b)) witness.push_back(b);
    throw PartiallyKnownError(witness, "valuations cover " + std::to_string(tuples.size()) + " of " +
                                           std::to_string(needed) +
                                           " joint value classes of the unknown observables");
  }
  return make_state(fam.space(), constant, fam.valuations().front());
}

SuperpositionShape superposition_shape(const StateFamily& fam) {
  const Submodule constant = constant_submodule(fam);
  std::vector<Observable> candidates = fam.known().basis();
  if (fam.known().cardinality() <= kExhaustiveObservableLimit) {
    for (const auto& f : fam.known().elements()) candidates.push_back(f);
  }
  for (const auto& f : candidates) {
    if (constant.contains(f)) continue;
    const Submodule spanned = sum(constant, howell_form(std::vector{f}, constant.modulus(),
                                                        constant.ambient_dim()));
    if (spanned != fam.known()) continue;
    if (!std::holds_alternative<TotallyUnknown>(classify(f, fam))) {
      fail(ErrorCode::BadFamilyShape, "the varying observable " + to_string(f) +
                                          " is not totally unknown");
    }
    return {constant, f};
  }
  fail(ErrorCode::BadFamilyShape,
       "family must vary in exactly one observable beyond its constant part");
}

EpistemicState superpose(const StateFamily& fam, const Observable& f_new, std::size_t phase) {
  const auto shape = superposition_shape(fam);
  const Modulus d = fam.space().modulus();
  if (f_new.size() != fam.space().dim()) fail(ErrorCode::DimensionMismatch, "observable length");
  if (phase >= fam.size()) fail(ErrorCode::IndexError, "phase index out of range");
  if (fam.known().contains(f_new)) {
    fail(ErrorCode::DegenerateChoice, to_string(f_new) + " is already known");
  }
  const Submodule known =
      sum(shape.constant, howell_form(std::vector{f_new}, d, fam.space().dim()));
  if (!is_isotropic(known)) {
    fail(ErrorCode::NotIsotropicChoice, to_string(f_new) + " does not commute with the constant part");
  }
  if (known == fam.known()) fail(ErrorCode::DegenerateChoice, "choice reproduces the family space");

  // Shift v_j inside V-perp so f_new reads the value f_k had in member j.
  const ModVector& vj = fam.valuations()[phase];
  const Submodule perp = orthogonal_complement(fam.known());
  std::vector<ModVector> rows;
  for (const auto& b : perp.basis()) rows.push_back(ModVector({dot(f_new, b, d)}, d));
  const ModVector target({d.sub(dot(shape.unknown, vj, d), dot(f_new, vj, d))}, d);
  ModVector v = vj;
  if (const auto coeffs = solve(rows, target, d)) {
    for (std::size_t i = 0; i < rows.size(); ++i) v = add(v, scale((*coeffs)[i], perp.basis()[i], d), d);
  }
  return make_state(fam.space(), known, v);
}

std::vector<Observable> enumerate_superposition_choices(const StateFamily& fam) {
  const auto shape = superposition_shape(fam);
  const Modulus d = fam.space().modulus();
  std::vector<Observable> out;
  std::set<Submodule> seen;
  for (const auto& f : symplectic_complement(shape.constant).elements()) {
    if (fam.known().contains(f)) continue;
    Submodule known = sum(shape.constant, howell_form(std::vector{f}, d, fam.space().dim()));
    if (seen.insert(std::move(known)).second) out.push_back(f);
  }
  return out;
}

PureDecomposition decompose_into_pure(const EpistemicState& s) {
  if (!s.modulus().is_prime()) {
    fail(ErrorCode::NotSupportedModulus, "pure decomposition is implemented for prime d only");
  }
  Submodule extended = s.known();
  while (extended.cardinality() < checked_pow(s.modulus().value(), s.space().n())) {
    const Submodule room = symplectic_complement(extended);
    const auto next = std::find_if(room.basis().begin(), room.basis().end(),
                                   [&](const ModVector& f) { return !extended.contains(f); });
    if (next == room.basis().end()) break;
    extended = sum(extended, howell_form(std::vector{*next}, s.modulus(), s.space().dim()));
  }
  PureDecomposition out{extended, {}};
  for (const auto& o : outcomes(Measurement(extended), s)) {
    out.valuations.push_back(o.valuation);
  }
  return out;
}

}  // namespace toytheory
