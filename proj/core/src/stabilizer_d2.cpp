#include "toytheory/stabilizer_d2.hpp"

#include <algorithm>

#include "toytheory/errors.hpp"

namespace toytheory::stab {

namespace {

const Modulus kTwo(2);

struct SignedRow {
  ModVector bits;
  bool negative;
};

Letter letter_from_bits(Scalar q, Scalar p) {
  if (q && p) return Letter::Y;
  if (q) return Letter::X;
  if (p) return Letter::Z;
  return Letter::I;
}

SignedRow row_of(const PauliWord& g) { return {g.observable(), g.negative()}; }

PauliWord word_of(const SignedRow& r) { return PauliWord::from_observable(r.bits, r.negative); }

void xor_into(SignedRow& target, const SignedRow& source) {
  target.bits = add(target.bits, source.bits, kTwo);
  target.negative = target.negative != source.negative;
}

// Reduced row echelon form over GF(2) with sign tracking; throws if -I appears.
std::vector<SignedRow> echelon(std::vector<SignedRow> rows, std::size_t width) {
  std::vector<SignedRow> out;
  for (std::size_t col = 0; col < width; ++col) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const SignedRow& r) { return r.bits[col] != 0; });
    if (it == rows.end()) continue;
    SignedRow pivot = *it;
    rows.erase(it);
    for (auto& r : rows)
      if (r.bits[col]) xor_into(r, pivot);
    for (auto& r : out)
      if (r.bits[col]) xor_into(r, pivot);
    out.push_back(std::move(pivot));
  }
  for (const auto& r : rows) {
    if (r.negative) fail(ErrorCode::InvalidGroup, "generators produce -I");
  }
  return out;
}

std::size_t pivot_of(const SignedRow& r) {
  for (std::size_t i = 0; i < r.bits.size(); ++i)
    if (r.bits[i]) return i;
  return r.bits.size();
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) fail(ErrorCode::DimensionMismatch, "words act on different numbers of systems");
}

}  // namespace

PauliWord::PauliWord(bool negative, std::vector<Letter> letters)
    : negative_(negative), letters_(std::move(letters)) {}

PauliWord PauliWord::parse(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    negative = text[0] == '-';
    pos = 1;
  }
  std::vector<Letter> letters;
  for (; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case 'I': letters.push_back(Letter::I); break;
      case 'X': letters.push_back(Letter::X); break;
      case 'Y': letters.push_back(Letter::Y); break;
      case 'Z': letters.push_back(Letter::Z); break;
      default: fail(ErrorCode::InvalidArgument, "bad Pauli word '" + text + "'");
    }
  }
  if (letters.empty()) fail(ErrorCode::InvalidArgument, "empty Pauli word");
  return {negative, std::move(letters)};
}

PauliWord PauliWord::identity(std::size_t systems) {
  return {false, std::vector<Letter>(systems, Letter::I)};
}

PauliWord PauliWord::from_observable(const Observable& f, bool negative) {
  std::vector<Letter> letters;
  for (std::size_t i = 0; i + 1 < f.size(); i += 2) letters.push_back(letter_from_bits(f[i] % 2, f[i + 1] % 2));
  return {negative, std::move(letters)};
}

bool PauliWord::is_identity_letters() const noexcept {
  return std::all_of(letters_.begin(), letters_.end(), [](Letter l) { return l == Letter::I; });
}

Observable PauliWord::observable() const {
  ModVector f(2 * letters_.size());
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    f[2 * i] = letters_[i] == Letter::X || letters_[i] == Letter::Y;
    f[2 * i + 1] = letters_[i] == Letter::Z || letters_[i] == Letter::Y;
  }
  return f;
}

std::string PauliWord::str() const {
  std::string out = negative_ ? "-" : "+";
  for (Letter l : letters_) out += "IXYZ"[static_cast<int>(l)];
  return out;
}

PauliWord operator*(const PauliWord& a, const PauliWord& b) {
  require_same_size(a.systems(), b.systems());
  return PauliWord::from_observable(add(a.observable(), b.observable(), kTwo),
                                    a.negative() != b.negative());
}

bool commutes(const PauliWord& g, const PauliWord& h) {
  require_same_size(g.systems(), h.systems());
  std::size_t clashes = 0;
  for (std::size_t i = 0; i < g.systems(); ++i) {
    const Letter a = g.letters()[i], b = h.letters()[i];
    if (a != Letter::I && b != Letter::I && a != b) ++clashes;
  }
  return clashes % 2 == 0;
}

int eigenvalue(const PauliWord& g, const std::vector<int>& labels) {
  require_same_size(g.systems(), labels.size());
  static constexpr std::array<std::array<int, 4>, 4> kDiagonal{{
      {1, 1, 1, 1},    // I
      {1, -1, 1, -1},  // X
      {1, -1, -1, 1},  // Y
      {1, 1, -1, -1},  // Z
  }};
  int value = g.negative() ? -1 : 1;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    value *= kDiagonal[static_cast<std::size_t>(g.letters()[i])][static_cast<std::size_t>(labels[i] - 1)];
  }
  return value;
}

ToyStabilizerGroup ToyStabilizerGroup::from_generators(std::size_t systems,
                                                       const std::vector<PauliWord>& gens) {
  for (const auto& g : gens) require_same_size(g.systems(), systems);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commutes(gens[i], gens[j])) {
        fail(ErrorCode::InvalidGroup, gens[i].str() + " and " + gens[j].str() + " do not commute");
      }
  std::vector<SignedRow> rows;
  for (const auto& g : gens) rows.push_back(row_of(g));
  std::vector<PauliWord> canonical;
  for (const auto& r : echelon(std::move(rows), 2 * systems)) canonical.push_back(word_of(r));
  return ToyStabilizerGroup(systems, std::move(canonical));
}

ToyStabilizerGroup ToyStabilizerGroup::trivial(std::size_t systems) { return from_generators(systems, {}); }

std::optional<bool> ToyStabilizerGroup::member_sign(const PauliWord& g) const {
  require_same_size(g.systems(), systems_);
  SignedRow r{g.observable(), false};
  for (const auto& gen : generators_) {
    const SignedRow row = row_of(gen);
    if (r.bits[pivot_of(row)]) xor_into(r, row);
  }
  if (!r.bits.is_zero()) return std::nullopt;
  return r.negative;
}

bool ToyStabilizerGroup::contains(const PauliWord& g) const {
  const auto sign = member_sign(g);
  return sign && *sign == g.negative();
}

Submodule ToyStabilizerGroup::unsigned_span() const {
  std::vector<ModVector> rows;
  for (const auto& g : generators_) rows.push_back(g.observable());
  return howell_form(rows, kTwo, 2 * systems_);
}

std::vector<PauliWord> ToyStabilizerGroup::elements() const {
  std::vector<PauliWord> out{PauliWord::identity(systems_)};
  for (const auto& g : generators_) {
    const std::size_t existing = out.size();
    for (std::size_t k = 0; k < existing; ++k) out.push_back(out[k] * g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const ToyStabilizerGroup& g) {
  std::string out = "span{";
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    if (i) out += ", ";
    out += g.generators()[i].str();
  }
  return out + "}";
}

std::vector<std::vector<int>> stabilized_support(const ToyStabilizerGroup& s) {
  std::vector<std::vector<int>> out;
  std::vector<int> labels(s.systems(), 1);
  while (true) {
    if (std::all_of(s.generators().begin(), s.generators().end(),
                    [&](const PauliWord& g) { return eigenvalue(g, labels) == 1; })) {
      out.push_back(labels);
    }
    std::size_t i = labels.size();
    while (i > 0 && labels[i - 1] == 4) labels[--i] = 1;
    if (i == 0) break;
    ++labels[i - 1];
  }
  return out;
}

EpistemicState to_general(const ToyStabilizerGroup& s) {
  const PhaseSpace space(s.systems(), kTwo);
  std::vector<ModVector> gens;
  ModVector signs(s.rank());
  for (std::size_t i = 0; i < s.rank(); ++i) {
    gens.push_back(s.generators()[i].observable());
    signs[i] = s.generators()[i].negative() ? 1 : 0;
  }
  // Solve f_i^T v = [g_i negative] by treating coordinates of v as coefficients.
  std::vector<ModVector> columns(space.dim(), ModVector(s.rank()));
  for (std::size_t i = 0; i < s.rank(); ++i)
    for (std::size_t j = 0; j < space.dim(); ++j) columns[j][i] = gens[i][j];
  ModVector v = space.zero();
  if (s.rank() > 0) {
    const auto sol = solve(columns, signs, kTwo);
    if (!sol) fail(ErrorCode::InvalidGroup, "inconsistent generator signs");
    v = ModVector(*sol, kTwo);
  }
  return make_state(space, gens, v);
}

ToyStabilizerGroup from_general(const EpistemicState& s) {
  if (s.modulus().value() != 2) fail(ErrorCode::NotD2, "the stabilizer view exists for d=2 only");
  std::vector<PauliWord> gens;
  for (const auto& f : s.known().basis()) {
    gens.push_back(PauliWord::from_observable(f, dot(f, s.valuation(), kTwo) == 1));
  }
  return ToyStabilizerGroup::from_generators(s.space().n(), gens);
}

bool is_rephasing(const ToyStabilizerGroup& s, const ToyStabilizerGroup& t) {
  return s.systems() == t.systems() && s.unsigned_span() == t.unsigned_span();
}

namespace {

// Generators of s split by whether t holds them with the opposite sign.
struct SignSplit {
  std::vector<PauliWord> agreeing;
  std::vector<PauliWord> flipped;
};

SignSplit split_signs(const ToyStabilizerGroup& s, const ToyStabilizerGroup& t) {
  if (!is_rephasing(s, t)) fail(ErrorCode::NotRephasing, to_string(s) + " vs " + to_string(t));
  SignSplit out;
  for (const auto& g : s.generators()) (t.contains(g) ? out.agreeing : out.flipped).push_back(g);
  return out;
}

}  // namespace

ToyStabilizerGroup stab_mix(const ToyStabilizerGroup& s, const ToyStabilizerGroup& t) {
  const auto split = split_signs(s, t);
  std::vector<PauliWord> gens = split.agreeing;
  for (std::size_t i = 1; i < split.flipped.size(); ++i) gens.push_back(split.flipped[i] * split.flipped[0]);
  return ToyStabilizerGroup::from_generators(s.systems(), gens);
}

std::vector<ToyStabilizerGroup> stab_superpose(const ToyStabilizerGroup& s, const ToyStabilizerGroup& t) {
  if (!s.is_pure() || !t.is_pure()) fail(ErrorCode::NotPure, "superposition needs pure groups");
  const auto split = split_signs(s, t);
  if (split.flipped.empty()) fail(ErrorCode::InvalidArgument, "cannot superpose a group with itself");
  // Normalize: only the last generator differs in sign between s and t.
  std::vector<PauliWord> shared = split.agreeing;
  const PauliWord& last = split.flipped.front();
  for (std::size_t i = 1; i < split.flipped.size(); ++i) shared.push_back(split.flipped[i] * last);

  std::vector<ModVector> rows;
  for (const auto& g : shared) rows.push_back(g.observable());
  const Submodule room = symplectic_complement(howell_form(rows, kTwo, 2 * s.systems()));
  const Submodule occupied = s.unsigned_span();
  const auto h0 = std::find_if(room.basis().begin(), room.basis().end(),
                               [&](const ModVector& f) { return !occupied.contains(f); });
  if (h0 == room.basis().end()) fail(ErrorCode::InvalidGroup, "no superposing observable exists");

  std::vector<ToyStabilizerGroup> out;
  const PauliWord base = PauliWord::from_observable(*h0);
  for (const PauliWord& h : {base, PauliWord::from_observable((base * last).observable())}) {
    for (bool negative : {false, true}) {
      auto gens = shared;
      gens.push_back(PauliWord(negative, h.letters()));
      out.push_back(ToyStabilizerGroup::from_generators(s.systems(), gens));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ToyStabilizerGroup stab_measure(const ToyStabilizerGroup& s, const PauliWord& g, int outcome_sign) {
  require_same_size(g.systems(), s.systems());
  if (outcome_sign != 1 && outcome_sign != -1) fail(ErrorCode::InvalidArgument, "outcome sign is +1 or -1");
  const PauliWord recorded(g.negative() != (outcome_sign < 0), g.letters());
  if (const auto sign = s.member_sign(recorded)) {
    if (*sign != recorded.negative()) {
      fail(ErrorCode::InconsistentOutcome, recorded.negated().str() + " is already in the group");
    }
    return s;
  }
  std::vector<PauliWord> gens = s.generators();
  const auto first = std::find_if(gens.begin(), gens.end(), [&](const PauliWord& h) { return !commutes(h, g); });
  if (first != gens.end()) {
    const PauliWord h = *first;
    gens.erase(first);
    for (auto& other : gens)
      if (!commutes(other, g)) other = other * h;
  }
  gens.push_back(recorded);
  return ToyStabilizerGroup::from_generators(s.systems(), gens);
}

bool stab_factorizes(const ToyStabilizerGroup& s, const Bipartition& bp) {
  const PhaseSpace space(s.systems(), kTwo);
  const Submodule span = s.unsigned_span();
  const Submodule local = sum(intersect(span, coordinate_submodule(space, bp.a)),
                              intersect(span, coordinate_submodule(space, bp.b)));
  return local == span;
}

std::vector<ToyStabilizerGroup> stab_decompose(const ToyStabilizerGroup& s) {
  Submodule extended = s.unsigned_span();
  std::vector<PauliWord> added;
  while (extended.basis().size() < s.systems()) {
    const Submodule room = symplectic_complement(extended);
    const auto next = std::find_if(room.basis().begin(), room.basis().end(),
                                   [&](const ModVector& f) { return !extended.contains(f); });
    if (next == room.basis().end()) break;
    added.push_back(PauliWord::from_observable(*next));
    extended = sum(extended, howell_form(std::vector{*next}, kTwo, 2 * s.systems()));
  }
  std::vector<ToyStabilizerGroup> out;
  for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << added.size()); ++signs) {
    auto gens = s.generators();
    for (std::size_t i = 0; i < added.size(); ++i) {
      gens.push_back(PauliWord(((signs >> i) & 1u) != 0, added[i].letters()));
    }
    out.push_back(ToyStabilizerGroup::from_generators(s.systems(), gens));
  }
  return out;
}

}  // namespace toytheory::stab
