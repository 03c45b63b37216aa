#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toytheory/ring_linalg.hpp"

namespace toytheory {

using Observable = ModVector;

// n degrees of freedom over Z_d, coordinates ordered (q_1, p_1, ..., q_n, p_n).
class PhaseSpace {
 public:
  PhaseSpace(std::size_t n, Modulus d);

  std::size_t n() const noexcept { return n_; }
  Modulus modulus() const noexcept { return d_; }
  std::size_t dim() const noexcept { return 2 * n_; }
  std::uint64_t size() const { return checked_pow(d_.value(), dim()); }

  ModVector q(std::size_t system) const;
  ModVector p(std::size_t system) const;
  ModVector zero() const { return ModVector(dim()); }
  ModVector vec(std::vector<Scalar> entries) const;

  friend bool operator==(const PhaseSpace&, const PhaseSpace&) = default;

 private:
  std::size_t n_;
  Modulus d_;
};

// J with the same (0 1; -1 0) block on every degree of freedom.
ModMatrix symplectic_matrix(std::size_t n, Modulus d);
Scalar symplectic_form(const Observable& f, const Observable& g, Modulus d);
bool is_isotropic(const Submodule& v);
// {f : [f, g] = 0 for all g in v}
Submodule symplectic_complement(const Submodule& v);

class EpistemicState {
 public:
  const PhaseSpace& space() const noexcept { return space_; }
  Modulus modulus() const noexcept { return space_.modulus(); }
  const Submodule& known() const noexcept { return known_; }
  const Submodule& known_complement() const noexcept { return complement_; }
  // Canonical representative of v modulo V-perp.
  const ModVector& valuation() const noexcept { return valuation_; }

  friend bool operator==(const EpistemicState& a, const EpistemicState& b) {
    return a.space_ == b.space_ && a.known_ == b.known_ && a.valuation_ == b.valuation_;
  }
  friend bool operator<(const EpistemicState& a, const EpistemicState& b) {
    if (a.known_ != b.known_) return a.known_ < b.known_;
    return a.valuation_ < b.valuation_;
  }

 private:
  friend EpistemicState make_state(const PhaseSpace&, const Submodule&, const ModVector&);
  EpistemicState(PhaseSpace space, Submodule known, Submodule complement, ModVector valuation)
      : space_(space), known_(std::move(known)), complement_(std::move(complement)),
        valuation_(std::move(valuation)) {}

  PhaseSpace space_;
  Submodule known_;
  Submodule complement_;
  ModVector valuation_;
};

EpistemicState make_state(const PhaseSpace& space, const Submodule& known, const ModVector& v);
EpistemicState make_state(const PhaseSpace& space, const std::vector<Observable>& generators,
                          const ModVector& v);
EpistemicState full_ignorance(const PhaseSpace& space);

AffineCoset support(const EpistemicState& s);

struct OnticDistribution {
  AffineCoset support;
  std::uint64_t normalization;
};
OnticDistribution distribution(const EpistemicState& s);

bool is_pure(const EpistemicState& s);
bool states_equal(const EpistemicState& a, const EpistemicState& b);

// Every f^T m over m in the phase space: multiples of gcd(f, d).
std::vector<Scalar> attainable_values(const Observable& f, Modulus d);
bool is_fine_grained(const Observable& f, Modulus d);

// Outcome of testing an arbitrary ontic set for validity.
struct ValidityVerdict {
  std::optional<EpistemicState> state;
  std::string reason;
  bool valid() const noexcept { return state.has_value(); }
};
inline constexpr const char* kNotACoset = "support is not an affine coset";
inline constexpr const char* kNotIsotropicSupport = "generators are not isotropic";
ValidityVerdict state_from_support(const PhaseSpace& space, const std::vector<ModVector>& points);

EpistemicState marginalize(const EpistemicState& s, const std::vector<std::size_t>& keep);
EpistemicState tensor_product(const EpistemicState& a, const EpistemicState& b);

// Ontic index over Z_d^{2n}, first coordinate most significant.
std::uint64_t point_index(const ModVector& m, Modulus d);
ModVector point_at(std::uint64_t index, std::size_t dim, Modulus d);

std::string render_grid(const EpistemicState& s);

struct Bipartition {
  std::set<std::size_t> a;
  std::set<std::size_t> b;
};
Bipartition make_bipartition(std::size_t n, const std::set<std::size_t>& side_a);
// Submodule of vectors supported on the listed systems only.
Submodule coordinate_submodule(const PhaseSpace& space, const std::set<std::size_t>& systems);

}  // namespace toytheory
