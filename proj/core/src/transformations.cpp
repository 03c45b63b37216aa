#include "toytheory/transformations.hpp"

#include <algorithm>
#include <numeric>

#include "toytheory/catalog.hpp"
#include "toytheory/entanglement.hpp"
#include "toytheory/errors.hpp"

namespace toytheory {

SymplecticMap::SymplecticMap(const PhaseSpace& space, ModMatrix s, ModVector a)
    : space_(space), s_(std::move(s)), a_(std::move(a)) {
  if (s_.rows() != space.dim() || s_.cols() != space.dim() || a_.size() != space.dim()) {
    fail(ErrorCode::DimensionMismatch, "map shape does not match the phase space");
  }
  for (std::size_t i = 0; i < s_.rows(); ++i)
    for (std::size_t j = 0; j < s_.cols(); ++j) s_.at(i, j) = space.modulus().reduce(s_.at(i, j));
  a_ = ModVector(a_.entries(), space.modulus());
}

SymplecticMap SymplecticMap::identity(const PhaseSpace& space) {
  return SymplecticMap(space, ModMatrix::identity(space.dim()), space.zero());
}

ModVector SymplecticMap::operator()(const ModVector& m) const {
  return add(toytheory::apply(s_, m, space_.modulus()), a_, space_.modulus());
}

bool is_symplectic(const ModMatrix& s, Modulus d) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) return false;
  const ModMatrix j = symplectic_matrix(s.rows() / 2, d);
  return multiply(multiply(transpose(s), j, d), s, d) == j;
}

namespace {

void require_valid(const SymplecticMap& t) {
  if (!is_symplectic(t.matrix(), t.space().modulus())) {
    fail(ErrorCode::InvalidMap, "S^T J S != J");
  }
}

// S^{-1} = J^T S^T J.
ModMatrix symplectic_inverse(const ModMatrix& s, Modulus d) {
  const ModMatrix j = symplectic_matrix(s.rows() / 2, d);
  return multiply(multiply(transpose(j), transpose(s), d), j, d);
}

}  // namespace

EpistemicState apply(const SymplecticMap& t, const EpistemicState& s) {
  require_valid(t);
  if (!(t.space() == s.space())) fail(ErrorCode::DimensionMismatch, "map and state spaces differ");
  const Modulus d = s.modulus();
  // Observables move by (S^T)^{-1} = J^T S J so that f'^T (S m) = f^T m.
  const ModMatrix j = symplectic_matrix(s.space().n(), d);
  const ModMatrix dual = multiply(multiply(transpose(j), t.matrix(), d), j, d);
  std::vector<ModVector> gens;
  for (const auto& f : s.known().basis()) gens.push_back(toytheory::apply(dual, f, d));
  return make_state(s.space(), howell_form(gens, d, s.space().dim()), t(s.valuation()));
}

SymplecticMap compose(const SymplecticMap& t1, const SymplecticMap& t2) {
  if (!(t1.space() == t2.space())) fail(ErrorCode::DimensionMismatch, "map spaces differ");
  const Modulus d = t1.space().modulus();
  return SymplecticMap(t1.space(), multiply(t1.matrix(), t2.matrix(), d), t1(t2.displacement()));
}

SymplecticMap invert(const SymplecticMap& t) {
  require_valid(t);
  const Modulus d = t.space().modulus();
  ModMatrix inv = symplectic_inverse(t.matrix(), d);
  ModVector a = negate(toytheory::apply(inv, t.displacement(), d), d);
  return SymplecticMap(t.space(), std::move(inv), std::move(a));
}

namespace {

void check_system(std::size_t i, const PhaseSpace& space) {
  if (i >= space.n()) fail(ErrorCode::IndexError, "system index " + std::to_string(i) + " out of range");
}

}  // namespace

SymplecticMap toy_cnot(std::size_t control, std::size_t target, const PhaseSpace& space) {
  check_system(control, space);
  check_system(target, space);
  if (control == target) fail(ErrorCode::IndexError, "control and target coincide");
  const Modulus d = space.modulus();
  // q_c -= q_t and p_t += p_c; observables then follow X_c -> X_c X_t, Z_t -> Z_c Z_t.
  ModMatrix s = ModMatrix::identity(space.dim());
  s.at(2 * control, 2 * target) = d.neg(1);
  s.at(2 * target + 1, 2 * control + 1) = 1;
  return SymplecticMap(space, std::move(s), space.zero());
}

SymplecticMap local_map(std::size_t system, const std::array<Scalar, 4>& block, const PhaseSpace& space) {
  check_system(system, space);
  ModMatrix s = ModMatrix::identity(space.dim());
  const std::size_t q = 2 * system, p = q + 1;
  s.at(q, q) = space.modulus().reduce(block[0]);
  s.at(q, p) = space.modulus().reduce(block[1]);
  s.at(p, q) = space.modulus().reduce(block[2]);
  s.at(p, p) = space.modulus().reduce(block[3]);
  return SymplecticMap(space, std::move(s), space.zero());
}

SymplecticMap fourier(std::size_t system, const PhaseSpace& space) {
  return local_map(system, {0, -1, 1, 0}, space);
}

SymplecticMap phase_shear(std::size_t system, const PhaseSpace& space) {
  return local_map(system, {1, 0, 1, 1}, space);
}

SymplecticMap swap_systems(std::size_t i, std::size_t j, const PhaseSpace& space) {
  check_system(i, space);
  check_system(j, space);
  ModMatrix s(space.dim(), space.dim());
  for (std::size_t k = 0; k < space.n(); ++k) {
    const std::size_t from = k == i ? j : (k == j ? i : k);
    s.at(2 * k, 2 * from) = 1;
    s.at(2 * k + 1, 2 * from + 1) = 1;
  }
  return SymplecticMap(space, std::move(s), space.zero());
}

SymplecticMap displacement(const ModVector& a, const PhaseSpace& space) {
  return SymplecticMap(space, ModMatrix::identity(space.dim()), a);
}

EpistemicState irreversible_apply(const SymplecticMap& t, const EpistemicState& ancilla,
                                  const EpistemicState& s) {
  const EpistemicState joint = tensor_product(s, ancilla);
  const EpistemicState moved = apply(t, joint);
  std::vector<std::size_t> keep(s.space().n());
  std::iota(keep.begin(), keep.end(), 0);
  return marginalize(moved, keep);
}

std::uint32_t label_index(const std::vector<int>& labels) {
  std::uint32_t idx = 0;
  for (int l : labels) {
    if (l < 1 || l > 4) fail(ErrorCode::InvalidArgument, "ontic labels are 1..4");
    idx = idx * 4 + static_cast<std::uint32_t>(l - 1);
  }
  return idx;
}

std::vector<int> index_labels(std::uint32_t index, std::size_t systems) {
  std::vector<int> labels(systems);
  for (std::size_t i = systems; i-- > 0;) {
    labels[i] = static_cast<int>(index % 4) + 1;
    index /= 4;
  }
  return labels;
}

ModVector labels_to_point(const std::vector<int>& labels) {
  ModVector m(2 * labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 1 || labels[i] > 4) fail(ErrorCode::InvalidArgument, "ontic labels are 1..4");
    m[2 * i] = (labels[i] - 1) % 2;
    m[2 * i + 1] = (labels[i] - 1) / 2;
  }
  return m;
}

std::vector<int> point_to_labels(const ModVector& m) {
  std::vector<int> labels(m.size() / 2);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    labels[i] = static_cast<int>(1 + m[2 * i] + 2 * m[2 * i + 1]);
  }
  return labels;
}

OnticPermutation::OnticPermutation(std::size_t systems, std::vector<std::uint32_t> targets)
    : systems_(systems), targets_(std::move(targets)) {
  if (systems == 0 || systems > 8) fail(ErrorCode::TooLarge, "ontic permutations cover 1..8 systems");
  const std::size_t size = std::size_t{1} << (2 * systems);
  if (targets_.size() != size) {
    fail(ErrorCode::InvalidMap, "permutation needs " + std::to_string(size) + " entries");
  }
  std::vector<bool> hit(size, false);
  for (auto t : targets_) {
    if (t >= size || hit[t]) fail(ErrorCode::InvalidMap, "ontic map is not a bijection");
    hit[t] = true;
  }
}

OnticPermutation OnticPermutation::identity(std::size_t systems) {
  std::vector<std::uint32_t> t(std::size_t{1} << (2 * systems));
  std::iota(t.begin(), t.end(), 0u);
  return OnticPermutation(systems, std::move(t));
}

OnticPermutation OnticPermutation::from_map(const SymplecticMap& t) {
  if (t.space().modulus().value() != 2) fail(ErrorCode::NotD2, "ontic permutations are d=2 only");
  require_valid(t);
  const std::size_t n = t.space().n();
  std::vector<std::uint32_t> targets(std::size_t{1} << (2 * n));
  for (std::uint32_t i = 0; i < targets.size(); ++i) {
    targets[i] = label_index(point_to_labels(t(labels_to_point(index_labels(i, n)))));
  }
  return OnticPermutation(n, std::move(targets));
}

OnticPermutation OnticPermutation::local(const std::vector<std::array<int, 4>>& per_system) {
  const std::size_t n = per_system.size();
  std::vector<std::uint32_t> targets(std::size_t{1} << (2 * n));
  for (std::uint32_t i = 0; i < targets.size(); ++i) {
    auto labels = index_labels(i, n);
    for (std::size_t k = 0; k < n; ++k) labels[k] = per_system[k][static_cast<std::size_t>(labels[k] - 1)];
    targets[i] = label_index(labels);
  }
  return OnticPermutation(n, std::move(targets));
}

OnticPermutation OnticPermutation::system_swap(const std::vector<std::size_t>& order) {
  const std::size_t n = order.size();
  std::vector<std::uint32_t> targets(std::size_t{1} << (2 * n));
  for (std::uint32_t i = 0; i < targets.size(); ++i) {
    const auto labels = index_labels(i, n);
    std::vector<int> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = labels.at(order[k]);
    targets[i] = label_index(out);
  }
  return OnticPermutation(n, std::move(targets));
}

OnticPermutation then(const OnticPermutation& p1, const OnticPermutation& p2) {
  if (p1.systems() != p2.systems()) fail(ErrorCode::DimensionMismatch, "permutation sizes differ");
  std::vector<std::uint32_t> t(p1.targets().size());
  for (std::uint32_t i = 0; i < t.size(); ++i) t[i] = p2(p1(i));
  return OnticPermutation(p1.systems(), std::move(t));
}

OnticPermutation inverse(const OnticPermutation& p) {
  std::vector<std::uint32_t> t(p.targets().size());
  for (std::uint32_t i = 0; i < t.size(); ++i) t[p(i)] = i;
  return OnticPermutation(p.systems(), std::move(t));
}

namespace {

std::vector<ModVector> image_points(const OnticPermutation& p, const EpistemicState& s) {
  std::vector<ModVector> out;
  for (const auto& m : support(s).elements()) {
    out.push_back(labels_to_point(index_labels(p(label_index(point_to_labels(m))), p.systems())));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool fully_product(const EpistemicState& s) {
  for (const auto& bp : all_bipartitions(s.space().n()))
    if (!is_product(s, bp)) return false;
  return true;
}

}  // namespace

bool permutation_is_valid(const OnticPermutation& p) {
  if (p.systems() > 2) fail(ErrorCode::TooLarge, "validity check is exhaustive for N <= 2 only");
  const PhaseSpace space(p.systems(), Modulus(2));
  for (const auto& s : state_catalog(Modulus(2), p.systems())) {
    if (!state_from_support(space, image_points(p, s)).valid()) return false;
  }
  return true;
}

OnticPermutation NonEntanglingDecomposition::recompose() const {
  return then(OnticPermutation::system_swap(order), OnticPermutation::local(locals));
}

DecompositionResult decompose_non_entangling(const OnticPermutation& p) {
  const std::size_t n = p.systems();
  if (n > 3) fail(ErrorCode::TooLarge, "decomposition search covers N <= 3");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    const OnticPermutation local = then(inverse(OnticPermutation::system_swap(order)), p);
    // Read off each output system's relabelling from inputs that vary one system.
    NonEntanglingDecomposition candidate{order, std::vector<std::array<int, 4>>(n)};
    for (std::size_t k = 0; k < n; ++k) {
      for (int x = 1; x <= 4; ++x) {
        std::vector<int> labels(n, 1);
        labels[k] = x;
        candidate.locals[k][static_cast<std::size_t>(x - 1)] =
            index_labels(local(label_index(labels)), n)[k];
      }
    }
    bool bijective = true;
    for (const auto& perm : candidate.locals) {
      auto sorted = perm;
      std::sort(sorted.begin(), sorted.end());
      bijective = bijective && sorted == std::array<int, 4>{1, 2, 3, 4};
    }
    if (bijective && candidate.recompose() == p) return candidate;
  } while (std::next_permutation(order.begin(), order.end()));

  const PhaseSpace space(n, Modulus(2));
  for (const auto& s : state_catalog(Modulus(2), n)) {
    if (!fully_product(s)) continue;
    auto image = image_points(p, s);
    const auto verdict = state_from_support(space, image);
    if (!verdict.valid() || !fully_product(*verdict.state)) return EntanglingWitness{s, std::move(image)};
  }
  fail(ErrorCode::InvalidArgument,
       "permutation neither factors into local maps and swaps nor entangles a product state");
}

}  // namespace toytheory
