#include "toytheory/epistemic_core.hpp"

#include <algorithm>
#include <numeric>

#include "toytheory/errors.hpp"

namespace toytheory {

PhaseSpace::PhaseSpace(std::size_t n, Modulus d) : n_(n), d_(d) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "phase space needs at least one degree of freedom");
}

ModVector PhaseSpace::q(std::size_t system) const {
  if (system >= n_) fail(ErrorCode::IndexError, "system index out of range");
  return unit_vector(dim(), 2 * system);
}

ModVector PhaseSpace::p(std::size_t system) const {
  if (system >= n_) fail(ErrorCode::IndexError, "system index out of range");
  return unit_vector(dim(), 2 * system + 1);
}

ModVector PhaseSpace::vec(std::vector<Scalar> entries) const {
  if (entries.size() != dim()) {
    fail(ErrorCode::DimensionMismatch, "expected a vector of length " + std::to_string(dim()));
  }
  return ModVector(std::move(entries), d_);
}

ModMatrix symplectic_matrix(std::size_t n, Modulus d) {
  ModMatrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j.at(2 * i, 2 * i + 1) = 1;
    j.at(2 * i + 1, 2 * i) = d.neg(1);
  }
  return j;
}

Scalar symplectic_form(const Observable& f, const Observable& g, Modulus d) {
  if (f.size() != g.size() || f.size() % 2 != 0) {
    fail(ErrorCode::DimensionMismatch, "symplectic form needs equal even-length vectors");
  }
  Scalar acc = 0;
  for (std::size_t i = 0; i < f.size(); i += 2) {
    acc = d.add(acc, d.sub(d.mul(f[i], g[i + 1]), d.mul(f[i + 1], g[i])));
  }
  return acc;
}

bool is_isotropic(const Submodule& v) {
  const auto& b = v.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (symplectic_form(b[i], b[j], v.modulus()) != 0) return false;
  return true;
}

Submodule symplectic_complement(const Submodule& v) {
  const Modulus d = v.modulus();
  // [f, g] = (J^T g)^T f up to sign, so pair against the rotated basis.
  std::vector<ModVector> rotated;
  for (const auto& g : v.basis()) {
    ModVector r(g.size());
    for (std::size_t i = 0; i < g.size(); i += 2) {
      r[i] = g[i + 1];
      r[i + 1] = d.neg(g[i]);
    }
    rotated.push_back(std::move(r));
  }
  return kernel(ModMatrix(rotated, v.ambient_dim()), d);
}

EpistemicState make_state(const PhaseSpace& space, const Submodule& known, const ModVector& v) {
  if (known.ambient_dim() != space.dim() || known.modulus() != space.modulus() ||
      v.size() != space.dim()) {
    fail(ErrorCode::DimensionMismatch, "state data does not match the phase space");
  }
  if (!is_isotropic(known)) fail(ErrorCode::NotIsotropic, "known observables do not commute");
  Submodule complement = orthogonal_complement(known);
  ModVector canonical = complement.reduce(v);
  return EpistemicState(space, known, std::move(complement), std::move(canonical));
}

EpistemicState make_state(const PhaseSpace& space, const std::vector<Observable>& generators,
                          const ModVector& v) {
  for (const auto& g : generators) {
    if (g.size() != space.dim()) fail(ErrorCode::DimensionMismatch, "generator length mismatch");
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (symplectic_form(generators[i], generators[j], space.modulus()) != 0) {
        fail(ErrorCode::NotIsotropic, "generators " + to_string(generators[i]) + " and " +
                                          to_string(generators[j]) + " do not commute");
      }
  return make_state(space, howell_form(generators, space.modulus(), space.dim()), v);
}

EpistemicState full_ignorance(const PhaseSpace& space) {
  return make_state(space, Submodule::zero(space.modulus(), space.dim()), space.zero());
}

AffineCoset support(const EpistemicState& s) {
  return AffineCoset(s.known_complement(), s.valuation());
}

OnticDistribution distribution(const EpistemicState& s) {
  return {support(s), s.known_complement().cardinality()};
}

bool is_pure(const EpistemicState& s) {
  return s.known_complement().cardinality() ==
         checked_pow(s.modulus().value(), s.space().n());
}

bool states_equal(const EpistemicState& a, const EpistemicState& b) { return a == b; }

std::vector<Scalar> attainable_values(const Observable& f, Modulus d) {
  Scalar g = d.value();
  for (Scalar e : f) g = std::gcd(g, e);
  std::vector<Scalar> out;
  for (Scalar x = 0; x < d.value(); x += g) out.push_back(x);
  return out;
}

bool is_fine_grained(const Observable& f, Modulus d) {
  return attainable_values(f, d).size() == static_cast<std::size_t>(d.value());
}

ValidityVerdict state_from_support(const PhaseSpace& space, const std::vector<ModVector>& points) {
  std::vector<ModVector> pts;
  for (const auto& p : points) pts.push_back(space.vec(p.entries()));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return {std::nullopt, kNotACoset};
  const Modulus d = space.modulus();
  std::vector<ModVector> diffs;
  for (const auto& p : pts) diffs.push_back(sub(p, pts.front(), d));
  const Submodule direction = howell_form(diffs, d, space.dim());
  if (direction.cardinality() != pts.size()) return {std::nullopt, kNotACoset};
  const Submodule known = orthogonal_complement(direction);
  if (!is_isotropic(known)) return {std::nullopt, kNotIsotropicSupport};
  return {make_state(space, known, pts.front()), {}};
}

namespace {

std::vector<std::size_t> kept_coordinates(const PhaseSpace& space,
                                          const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> coords;
  for (std::size_t sys : keep) {
    if (sys >= space.n()) fail(ErrorCode::IndexError, "kept system out of range");
    coords.push_back(2 * sys);
    coords.push_back(2 * sys + 1);
  }
  return coords;
}

ModVector project(const ModVector& x, const std::vector<std::size_t>& coords) {
  ModVector out(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) out[i] = x[coords[i]];
  return out;
}

}  // namespace

EpistemicState marginalize(const EpistemicState& s, const std::vector<std::size_t>& keep) {
  if (keep.empty()) fail(ErrorCode::InvalidArgument, "marginal needs at least one system");
  std::vector<std::size_t> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorCode::InvalidArgument, "duplicate system in keep set");
  }
  const auto coords = kept_coordinates(s.space(), sorted);
  const PhaseSpace sub_space(sorted.size(), s.modulus());
  std::vector<ModVector> projected;
  for (const auto& b : s.known_complement().basis()) projected.push_back(project(b, coords));
  const Submodule direction = howell_form(projected, s.modulus(), sub_space.dim());
  return make_state(sub_space, orthogonal_complement(direction), project(s.valuation(), coords));
}

EpistemicState tensor_product(const EpistemicState& a, const EpistemicState& b) {
  if (a.modulus() != b.modulus()) fail(ErrorCode::DimensionMismatch, "moduli differ");
  const PhaseSpace joint(a.space().n() + b.space().n(), a.modulus());
  const std::size_t da = a.space().dim();
  auto embed = [&](const ModVector& x, std::size_t offset) {
    ModVector out(joint.dim());
    for (std::size_t i = 0; i < x.size(); ++i) out[offset + i] = x[i];
    return out;
  };
  std::vector<ModVector> gens;
  for (const auto& g : a.known().basis()) gens.push_back(embed(g, 0));
  for (const auto& g : b.known().basis()) gens.push_back(embed(g, da));
  const ModVector v = add(embed(a.valuation(), 0), embed(b.valuation(), da), a.modulus());
  return make_state(joint, howell_form(gens, a.modulus(), joint.dim()), v);
}

std::uint64_t point_index(const ModVector& m, Modulus d) {
  std::uint64_t idx = 0;
  for (Scalar e : m) idx = idx * static_cast<std::uint64_t>(d.value()) + static_cast<std::uint64_t>(e);
  return idx;
}

ModVector point_at(std::uint64_t index, std::size_t dim, Modulus d) {
  ModVector m(dim);
  const auto base = static_cast<std::uint64_t>(d.value());
  for (std::size_t i = dim; i-- > 0;) {
    m[i] = static_cast<Scalar>(index % base);
    index /= base;
  }
  return m;
}

std::string render_grid(const EpistemicState& s) {
  const Scalar d = s.modulus().value();
  const std::size_t n = s.space().n();
  if ((d != 2 && d != 3) || n > 2) {
    fail(ErrorCode::UnsupportedShape, "grid rendering covers d in {2,3} and n <= 2");
  }
  const auto cells = static_cast<Scalar>(d * d);
  const AffineCoset supp = support(s);
  // Cell index within a system is q + d*p.
  auto mark = [&](const ModVector& m) { return supp.contains(m) ? "█" : "·"; };
  std::string out;
  if (n == 1) {
    for (Scalar c = 0; c < cells; ++c) out += mark(s.space().vec({c % d, c / d}));
    out += '\n';
    return out;
  }
  for (Scalar row = cells - 1; row >= 0; --row) {
    for (Scalar col = 0; col < cells; ++col) {
      out += mark(s.space().vec({row % d, row / d, col % d, col / d}));
    }
    out += '\n';
  }
  return out;
}

Bipartition make_bipartition(std::size_t n, const std::set<std::size_t>& side_a) {
  Bipartition bp;
  for (std::size_t i : side_a) {
    if (i >= n) fail(ErrorCode::IndexError, "bipartition index out of range");
    bp.a.insert(i);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!bp.a.count(i)) bp.b.insert(i);
  if (bp.a.empty() || bp.b.empty()) {
    fail(ErrorCode::InvalidArgument, "both sides of a bipartition must be nonempty");
  }
  return bp;
}

Submodule coordinate_submodule(const PhaseSpace& space, const std::set<std::size_t>& systems) {
  std::vector<ModVector> gens;
  for (std::size_t sys : systems) {
    gens.push_back(space.q(sys));
    gens.push_back(space.p(sys));
  }
  return howell_form(gens, space.modulus(), space.dim());
}

}  // namespace toytheory
