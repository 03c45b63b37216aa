#include "toytheory/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <thread>

#include <json.hpp>

#include "toytheory/catalog.hpp"
#include "toytheory/entanglement.hpp"
#include "toytheory/errors.hpp"
#include "toytheory/measurement.hpp"
#include "toytheory/mixture_superposition.hpp"
#include "toytheory/original_d2.hpp"
#include "toytheory/serialization.hpp"
#include "toytheory/stabilizer_d2.hpp"
#include "toytheory/transformations.hpp"

namespace toytheory::oracle {
namespace {

using Point = std::vector<Scalar>;
using PointSet = std::set<Point>;

struct Counterexample {
  std::string text;
};

struct Context {
  Modulus d;
  std::size_t n;
  PhaseSpace ps;
  std::mt19937_64 rng;
  std::uint64_t fuzz_cases;
  std::uint64_t cases = 0;
  std::string note;
};

void require(bool ok, const std::function<std::string()>& describe) {
  if (!ok) throw Counterexample{describe()};
}

std::string show(const EpistemicState& s) { return serialize_state(s); }

std::string show(const std::vector<ModVector>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + to_string(vs[i]);
  return out + "]";
}

PointSet as_points(const std::vector<ModVector>& vs) {
  PointSet out;
  for (const auto& v : vs) out.insert(v.entries());
  return out;
}

PointSet support_points(const EpistemicState& s) { return as_points(support(s).elements()); }

Scalar plain_dot(const Point& a, const Point& b, Scalar d) {
  Scalar acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = (acc + a[i] * b[i]) % d;
  return acc;
}

Scalar plain_symp(const Point& a, const Point& b, Scalar d) {
  Scalar acc = 0;
  for (std::size_t i = 0; i + 1 < a.size(); i += 2) acc += a[i] * b[i + 1] - a[i + 1] * b[i];
  return ((acc % d) + d) % d;
}

std::vector<Point> every_point(Scalar d, std::size_t dim) {
  std::vector<Point> out;
  Point x(dim, 0);
  while (true) {
    out.push_back(x);
    std::size_t i = dim;
    while (i > 0 && ++x[i - 1] == d) x[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

PointSet closure(const std::vector<ModVector>& gens, Scalar d, std::size_t dim) {
  PointSet seen{Point(dim, 0)};
  std::vector<Point> frontier{Point(dim, 0)};
  while (!frontier.empty()) {
    std::vector<Point> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        Point y(dim);
        for (std::size_t i = 0; i < dim; ++i) y[i] = (x[i] + g[i]) % d;
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

PointSet annihilator(const PointSet& v, Scalar d, std::size_t dim, bool symplectic) {
  PointSet out;
  for (const auto& x : every_point(d, dim)) {
    bool ok = true;
    for (const auto& g : v) {
      if ((symplectic ? plain_symp(x, g, d) : plain_dot(x, g, d)) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(x);
  }
  return out;
}

// A nonempty set is a coset iff its differences from one member form a subgroup.
bool is_coset(const PointSet& s, Scalar d) {
  if (s.empty()) return false;
  const Point& base = *s.begin();
  PointSet diffs;
  for (const auto& x : s) {
    Point y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = ((x[i] - base[i]) % d + d) % d;
    diffs.insert(y);
  }
  for (const auto& a : diffs) {
    for (const auto& b : diffs) {
      Point c(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % d;
      if (!diffs.count(c)) return false;
    }
  }
  return true;
}

ModVector random_vector(Context& cx) {
  std::uniform_int_distribution<Scalar> coord(0, cx.d.value() - 1);
  std::vector<Scalar> e(cx.ps.dim());
  for (auto& x : e) x = coord(cx.rng);
  return ModVector(std::move(e), cx.d);
}

std::vector<ModVector> random_generators(Context& cx, std::size_t max_count) {
  std::uniform_int_distribution<std::size_t> count(0, max_count);
  std::vector<ModVector> out(count(cx.rng));
  for (auto& g : out) g = random_vector(cx);
  return out;
}

std::array<Scalar, 4> random_sl2(Context& cx) {
  std::uniform_int_distribution<Scalar> coord(0, cx.d.value() - 1);
  while (true) {
    const std::array<Scalar, 4> b{coord(cx.rng), coord(cx.rng), coord(cx.rng), coord(cx.rng)};
    if (cx.d.sub(cx.d.mul(b[0], b[3]), cx.d.mul(b[1], b[2])) == 1) return b;
  }
}

SymplecticMap random_map(Context& cx) {
  std::uniform_int_distribution<int> steps(1, 6);
  std::uniform_int_distribution<std::size_t> system(0, cx.n - 1);
  std::uniform_int_distribution<int> kind(0, 5);
  auto t = SymplecticMap::identity(cx.ps);
  for (int k = steps(cx.rng); k > 0; --k) {
    const int choice = cx.n > 1 ? kind(cx.rng) : kind(cx.rng) % 3;
    const auto a = system(cx.rng);
    auto b = system(cx.rng);
    if (cx.n > 1 && b == a) b = (a + 1) % cx.n;
    switch (choice) {
      case 0: t = compose(local_map(a, random_sl2(cx), cx.ps), t); break;
      case 1: t = compose(fourier(a, cx.ps), t); break;
      case 2: t = compose(phase_shear(a, cx.ps), t); break;
      case 3:
      case 4: t = compose(toy_cnot(a, b, cx.ps), t); break;
      default: t = compose(swap_systems(a, b, cx.ps), t); break;
    }
  }
  return compose(displacement(random_vector(cx), cx.ps), t);
}

std::vector<Submodule> isotropic_spaces(const Context& cx) {
  std::set<Submodule> subs;
  for (const auto& s : state_catalog(cx.d, cx.n)) subs.insert(s.known());
  return {subs.begin(), subs.end()};
}

std::vector<ModVector> valuation_classes(const Submodule& v, const PhaseSpace& ps) {
  std::vector<ModVector> out;
  for (const auto& o : outcomes(Measurement(v), full_ignorance(ps))) out.push_back(o.valuation);
  return out;
}

// Lemmas on submodules, complements and cosets, each against enumeration.
void algebra_identities(Context& cx) {
  const Scalar d = cx.d.value();
  const std::size_t dim = cx.ps.dim();
  const std::uint64_t total = cx.ps.size();
  for (std::uint64_t i = 0; i < cx.fuzz_cases; ++i, ++cx.cases) {
    const auto gv = random_generators(cx, 3);
    const auto gw = random_generators(cx, 3);
    const auto describe = [&] { return "V=" + show(gv) + " W=" + show(gw); };
    const auto v = howell_form(gv, cx.d, dim);
    const auto w = howell_form(gw, cx.d, dim);
    const auto v_set = closure(gv, d, dim);
    require(as_points(v.elements()) == v_set, [&] { return "span differs from closure: " + describe(); });
    const auto vp = orthogonal_complement(v);
    require(as_points(vp.elements()) == annihilator(v_set, d, dim, false),
            [&] { return "complement differs from annihilator: " + describe(); });
    require(orthogonal_complement(vp) == v, [&] { return "double complement: " + describe(); });
    require(v.cardinality() * vp.cardinality() == total, [&] { return "|V||V^perp|: " + describe(); });
    require(orthogonal_complement(sum(v, w)) == intersect(vp, orthogonal_complement(w)),
            [&] { return "complement of sum: " + describe(); });
    const auto vs = symplectic_complement(v);
    require(as_points(vs.elements()) == annihilator(v_set, d, dim, true),
            [&] { return "symplectic complement: " + describe(); });
    require(symplectic_complement(vs) == v, [&] { return "double symplectic complement: " + describe(); });

    const auto x = random_vector(cx);
    const auto y = random_vector(cx);
    const AffineCoset a(v, x);
    const AffineCoset b(w, y);
    PointSet both;
    const auto bp = as_points(b.elements());
    for (const auto& p : a.elements())
      if (bp.count(p.entries())) both.insert(p.entries());
    const auto met = coset_intersect(a, b);
    require(met.has_value() == !both.empty() && (!met || as_points(met->elements()) == both),
            [&] { return "coset intersection: " + describe() + " x=" + to_string(x) + " y=" + to_string(y); });
  }
}

// Supports have d^{2n}/|V| points, fixed by the known values, and rebuild the state.
void state_counting(Context& cx) {
  const std::uint64_t total = cx.ps.size();
  const auto all = every_point(cx.d.value(), cx.ps.dim());
  for (const auto& s : state_catalog(cx.d, cx.n)) {
    ++cx.cases;
    const auto pts = support_points(s);
    require(pts.size() * s.known().cardinality() == total, [&] { return "support size: " + show(s); });
    PointSet fixed;
    for (const auto& x : all) {
      bool ok = true;
      for (const auto& f : s.known().basis())
        if (plain_dot(f.entries(), x, cx.d.value()) != plain_dot(f.entries(), s.valuation().entries(), cx.d.value()))
          ok = false;
      if (ok) fixed.insert(x);
    }
    require(fixed == pts, [&] { return "support differs from the solution set: " + show(s); });
    require(is_pure(s) == (s.known().cardinality() == checked_pow(cx.d.value(), cx.n)),
            [&] { return "purity: " + show(s); });
    std::vector<ModVector> listed;
    for (const auto& p : pts) listed.emplace_back(p, cx.d);
    const auto back = state_from_support(cx.ps, listed);
    require(back.valid() && *back.state == s, [&] { return "support does not rebuild the state: " + show(s); });
    if (cx.d.value() == 2) {
      std::uint64_t k = 0;
      while ((std::uint64_t{1} << k) < s.known().cardinality()) ++k;
      require(k <= cx.n && pts.size() == (std::uint64_t{1} << (2 * cx.n - k)),
              [&] { return "size law: " + show(s); });
      require(original::is_valid_state(original::SetEpistemicState::from_general(s)),
              [&] { return "label form rejected: " + show(s); });
    }
  }
}

PointSet cell_points(const Submodule& v_pi, const ModVector& v, Scalar d, std::size_t dim) {
  PointSet out;
  for (const auto& x : every_point(d, dim)) {
    bool ok = true;
    for (const auto& g : v_pi.basis())
      if (plain_dot(g.entries(), x, d) != plain_dot(g.entries(), v.entries(), d)) ok = false;
    if (ok) out.insert(x);
  }
  return out;
}

// Outcome probabilities by counting, and the update lands in the outcome cell for good.
void measurement_update(Context& cx) {
  const auto spaces = isotropic_spaces(cx);
  const Scalar d = cx.d.value();
  const auto& cat = state_catalog(cx.d, cx.n);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t k = 0; k < spaces.size(); ++k)
      if (!spaces[k].is_zero()) pairs.emplace_back(i, k);
  const std::size_t budget = 5 * cx.fuzz_cases;
  if (pairs.size() > std::max<std::size_t>(budget, 50000)) {
    std::shuffle(pairs.begin(), pairs.end(), cx.rng);
    pairs.resize(budget);
    std::sort(pairs.begin(), pairs.end());
    cx.note = "state and measurement pairs sampled";
  }
  std::map<std::pair<Submodule, ModVector>, PointSet> cells;
  for (const auto& [si, ki] : pairs) {
    const auto& s = cat[si];
    const auto& v_pi = spaces[ki];
    const auto pts = support_points(s);
    {
      const Measurement m(v_pi);
      const auto describe = [&] { return show(s) + " measuring " + show(v_pi.basis()); };
      Probability sum_p(0);
      std::uint64_t counted = 0;
      for (const auto& o : outcomes(m, s)) {
        ++cx.cases;
        auto& cell = cells[{v_pi, o.valuation}];
        if (cell.empty()) cell = cell_points(v_pi, o.valuation, d, cx.ps.dim());
        std::uint64_t hit = 0;
        for (const auto& x : pts) hit += cell.count(x);
        counted += hit;
        sum_p += o.probability;
        require(o.probability == Probability(static_cast<std::int64_t>(hit), static_cast<std::int64_t>(pts.size())),
                [&] { return "probability: " + describe() + " outcome " + to_string(o.valuation); });
        const auto post = update(m, o.valuation, s);
        require(is_isotropic(post.known()) && is_subset(v_pi, post.known()),
                [&] { return "post-measurement space: " + describe(); });
        for (const auto& x : support_points(post))
          require(cell.count(x) > 0, [&] { return "post support leaves the cell: " + describe(); });
        require(update(m, o.valuation, post) == post, [&] { return "not idempotent: " + describe(); });
        const auto again = outcomes(m, post);
        require(again.size() == 1 && again[0].probability == Probability(1),
                [&] { return "repeat is not certain: " + describe(); });
      }
      require(counted == pts.size() && sum_p == Probability(1), [&] { return "outcomes incomplete: " + describe(); });
    }
  }
}

// d = 2: the generalized update agrees with the maximal-fidelity rule.
void update_equivalence(Context& cx) {
  const auto spaces = isotropic_spaces(cx);
  const auto ignorance = full_ignorance(cx.ps);
  for (const auto& v_pi : spaces) {
    if (v_pi.is_zero()) continue;
    const Measurement m(v_pi);
    std::vector<original::SetEpistemicState> partition;
    std::vector<ModVector> labels;
    for (const auto& o : outcomes(m, ignorance)) {
      partition.push_back(original::SetEpistemicState::from_general(make_state(cx.ps, v_pi, o.valuation)));
      labels.push_back(o.valuation);
    }
    for (const auto& s : state_catalog(cx.d, cx.n)) {
      const auto e = original::SetEpistemicState::from_general(s);
      for (const auto& o : outcomes(m, s)) {
        const auto expected = original::SetEpistemicState::from_general(update(m, o.valuation, s));
        const auto idx = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), o.valuation) - labels.begin());
        for (const auto& truth : e.basis()) {
          if (!partition[idx].contains(truth)) continue;
          ++cx.cases;
          const auto r = original::coarse_measure(partition, e, truth);
          require(r.cell == idx && r.state == expected, [&] {
            return show(s) + " measuring " + show(v_pi.basis()) + " outcome " + to_string(o.valuation);
          });
        }
      }
    }
  }
}

// Mixing a family gives the union of supports; for prime d rejection means the union is no coset.
void mixture_soundness(Context& cx) {
  const bool prime = cx.d.is_prime();
  if (!prime) cx.note = "rejections not checked for completeness";
  const std::size_t enumerate_up_to = 10;
  for (const auto& v : isotropic_spaces(cx)) {
    const auto classes = valuation_classes(v, cx.ps);
    std::vector<PointSet> parts;
    for (const auto& c : classes) parts.push_back(support_points(make_state(cx.ps, v, c)));
    std::vector<std::uint64_t> masks;
    if (classes.size() <= enumerate_up_to) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << classes.size()); ++mask) masks.push_back(mask);
    } else {
      cx.note = prime ? "large families sampled" : "large families sampled; rejections not checked for completeness";
      std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << classes.size()) - 1);
      for (int i = 0; i < 256; ++i) masks.push_back(pick(cx.rng));
    }
    for (const auto mask : masks) {
      ++cx.cases;
      std::vector<ModVector> vals;
      PointSet uni;
      for (std::size_t i = 0; i < classes.size(); ++i) {
        if (!(mask >> i & 1u)) continue;
        vals.push_back(classes[i]);
        uni.insert(parts[i].begin(), parts[i].end());
      }
      const StateFamily fam(cx.ps, v, vals);
      const auto describe = [&] { return "V=" + show(v.basis()) + " valuations=" + show(vals); };
      std::optional<EpistemicState> out;
      try {
        out = mix(fam);
      } catch (const PartiallyKnownError&) {
      }
      if (out) {
        require(support_points(*out) == uni, [&] { return "support is not the union: " + describe(); });
      } else if (prime) {
        require(!is_coset(uni, cx.d.value()), [&] { return "rejected a coset union: " + describe(); });
      }
    }
  }
}

// Prime d: every superposition output is a valid state meeting each member in 1/d of its support.
void superposition_soundness(Context& cx) {
  const Scalar d = cx.d.value();
  for (const auto& s : state_catalog(cx.d, cx.n)) {
    if (is_pure(s)) continue;
    const auto room = symplectic_complement(s.known());
    std::set<Submodule> done;
    for (const auto& f : room.elements()) {
      if (s.known().contains(f)) continue;
      const auto v = sum(s.known(), howell_form(std::vector{f}, cx.d, cx.ps.dim()));
      if (!done.insert(v).second) continue;
      std::vector<ModVector> vals;
      for (const auto& o : outcomes(Measurement(v), s)) vals.push_back(o.valuation);
      const StateFamily fam(cx.ps, v, vals);
      const auto describe = [&] { return show(s) + " split along " + to_string(f); };
      require(fam.size() == static_cast<std::size_t>(d) && mix(fam) == s, [&] { return "family: " + describe(); });
      const auto shape = superposition_shape(fam);
      std::vector<PointSet> members;
      for (std::size_t k = 0; k < fam.size(); ++k) members.push_back(support_points(fam.member(k)));
      for (const auto& g : enumerate_superposition_choices(fam)) {
        std::set<EpistemicState> phases;
        for (std::size_t j = 0; j < fam.size(); ++j) {
          ++cx.cases;
          const auto out = superpose(fam, g, j);
          const auto what = [&] { return describe() + " with " + to_string(g) + " phase " + std::to_string(j); };
          require(is_isotropic(out.known()) && out.known().contains(g) && is_subset(s.known(), out.known()),
                  [&] { return "invalid output: " + what(); });
          require(dot(g, out.valuation(), cx.d) == dot(shape.unknown, fam.valuations()[j], cx.d),
                  [&] { return "phase: " + what(); });
          const auto so = support_points(out);
          for (const auto& member : members) {
            std::size_t overlap = 0;
            for (const auto& x : member) overlap += so.count(x);
            require(overlap * static_cast<std::size_t>(d) == so.size(), [&] { return "overlap: " + what(); });
          }
          phases.insert(out);
        }
        require(phases.size() == fam.size(), [&] { return "phases coincide: " + describe(); });
      }
    }
  }
}

// Every state splits into d^n/|V| pure states with disjoint supports.
void pure_decomposition(Context& cx) {
  for (const auto& s : state_catalog(cx.d, cx.n)) {
    ++cx.cases;
    const auto fam = decompose_into_pure(s).family(cx.ps);
    require(fam.size() * s.known().cardinality() == checked_pow(cx.d.value(), cx.n),
            [&] { return "member count: " + show(s); });
    PointSet uni;
    std::size_t total = 0;
    for (std::size_t j = 0; j < fam.size(); ++j) {
      const auto m = fam.member(j);
      require(is_pure(m), [&] { return "impure member: " + show(s); });
      const auto part = support_points(m);
      total += part.size();
      uni.insert(part.begin(), part.end());
    }
    require(total == uni.size() && uni == support_points(s), [&] { return "supports: " + show(s); });
    require(mix(fam) == s, [&] { return "does not mix back: " + show(s); });
  }
}

// d = 2: the stabilizer and general pictures agree.
void stabilizer_correspondence(Context& cx) {
  for (const auto& s : state_catalog(cx.d, cx.n)) {
    ++cx.cases;
    const auto g = stab::from_general(s);
    require(stab::to_general(g) == s && stab::from_general(stab::to_general(g)) == g,
            [&] { return "round trip: " + show(s); });
    std::set<std::vector<int>> labels;
    for (const auto& m : support(s).elements()) labels.insert(point_to_labels(m));
    const auto stabilized = stab::stabilized_support(g);
    require(std::set<std::vector<int>>(stabilized.begin(), stabilized.end()) == labels,
            [&] { return "stabilized support: " + show(s); });
  }
  std::vector<stab::PauliWord> words;
  std::vector<stab::Letter> letters(cx.n, stab::Letter::I);
  while (true) {
    words.emplace_back(false, letters);
    std::size_t i = cx.n;
    while (i > 0) {
      auto& l = letters[i - 1];
      if (l != stab::Letter::Z) {
        l = static_cast<stab::Letter>(static_cast<int>(l) + 1);
        break;
      }
      l = stab::Letter::I;
      --i;
    }
    if (i == 0) break;
  }
  const auto points = every_point(2, cx.ps.dim());
  for (const auto& a : words) {
    for (const auto& b : words) {
      ++cx.cases;
      require(stab::commutes(a, b) == (symplectic_form(a.observable(), b.observable(), cx.d) == 0),
              [&] { return "commutation of " + a.str() + " and " + b.str(); });
    }
    for (const bool negative : {false, true}) {
      const stab::PauliWord w = negative ? a.negated() : a;
      for (const auto& x : points) {
        const ModVector m(x, cx.d);
        const int expected = (negative ? -1 : 1) * (dot(a.observable(), m, cx.d) == 0 ? 1 : -1);
        require(stab::eigenvalue(w, point_to_labels(m)) == expected,
                [&] { return "eigenvalue of " + w.str() + " at " + to_string(m); });
      }
    }
  }
}

Point project(const Point& x, const std::set<std::size_t>& systems) {
  Point out;
  for (const auto k : systems) {
    out.push_back(x[2 * k]);
    out.push_back(x[2 * k + 1]);
  }
  return out;
}

// Product states are exactly those with Cartesian supports; mixture witnesses mix back.
void entanglement_classes(Context& cx) {
  const auto bps = all_bipartitions(cx.n);
  for (const auto& s : state_catalog(cx.d, cx.n)) {
    const auto pts = support_points(s);
    for (const auto& bp : bps) {
      ++cx.cases;
      const auto describe = [&] {
        std::string side;
        for (const auto k : bp.a) side += std::to_string(k + 1);
        return show(s) + " split " + side;
      };
      PointSet pa, pb;
      for (const auto& x : pts) {
        pa.insert(project(x, bp.a));
        pb.insert(project(x, bp.b));
      }
      const bool cartesian = pa.size() * pb.size() == pts.size();
      const bool product = is_product(s, bp);
      require(product == cartesian, [&] { return "product test disagrees with support: " + describe(); });
      const auto c = classify_entanglement(s, bp);
      require((c.kind == EntanglementKind::Product) == product, [&] { return "class: " + describe(); });
      if (is_pure(s))
        require(c.kind != EntanglementKind::CorrelatedSeparable, [&] { return "pure state as mixture: " + describe(); });
      if (c.kind == EntanglementKind::CorrelatedSeparable) {
        require(c.witness.has_value() && mix(*c.witness) == s, [&] { return "witness: " + describe(); });
        for (std::size_t j = 0; j < c.witness->size(); ++j)
          require(is_product(c.witness->member(j), bp), [&] { return "witness member: " + describe(); });
      }
      bool prefix = true;
      std::size_t k = 0;
      for (const auto a : bp.a) prefix = prefix && a == k++;
      if (product && prefix) {
        std::vector<std::size_t> ka(bp.a.begin(), bp.a.end());
        std::vector<std::size_t> kb(bp.b.begin(), bp.b.end());
        require(tensor_product(marginalize(s, ka), marginalize(s, kb)) == s,
                [&] { return "marginals do not rebuild: " + describe(); });
      }
    }
  }
}

// Fuzzed symplectic-affine maps carry valid states to valid states point by point.
void transformation_transport(Context& cx) {
  const auto& cat = state_catalog(cx.d, cx.n);
  std::uniform_int_distribution<std::size_t> pick(0, cat.size() - 1);
  for (std::uint64_t i = 0; i < cx.fuzz_cases; ++i, ++cx.cases) {
    const auto t = random_map(cx);
    const auto& s = cat[pick(cx.rng)];
    const auto describe = [&] {
      std::string rows;
      for (const auto& r : t.matrix().row_vectors()) rows += to_string(r);
      return show(s) + " under S=" + rows + " a=" + to_string(t.displacement());
    };
    require(is_symplectic(t.matrix(), cx.d), [&] { return "map is not symplectic: " + describe(); });
    const auto out = apply(t, s);
    require(is_isotropic(out.known()) && std::binary_search(cat.begin(), cat.end(), out),
            [&] { return "image is not a catalog state: " + describe(); });
    require(is_pure(out) == is_pure(s), [&] { return "purity changed: " + describe(); });
    PointSet moved;
    for (const auto& m : support(s).elements()) moved.insert(t(m).entries());
    const auto image = support_points(out);
    require(moved.size() == image.size() && moved == image, [&] { return "support not transported: " + describe(); });
    require(apply(invert(t), out) == s, [&] { return "inverse does not undo: " + describe(); });
  }
  if (cx.d.value() == 2 && cx.n == 2) {
    ++cx.cases;
    const auto p = OnticPermutation::from_map(toy_cnot(0, 1, cx.ps));
    require(permutation_is_valid(p), [] { return std::string("CNOT is not a valid permutation"); });
    const auto r = decompose_non_entangling(p);
    const auto* w = std::get_if<EntanglingWitness>(&r);
    require(w != nullptr, [] { return std::string("CNOT decomposed into local maps"); });
    const auto bp = make_bipartition(2, {0});
    const auto image = state_from_support(cx.ps, w->image);
    require(is_product(w->input, bp) && image.valid() && !is_product(*image.state, bp) &&
                *image.state == apply(toy_cnot(0, 1, cx.ps), w->input),
            [&] { return "CNOT witness: " + show(w->input); });
  }
}

struct CheckSpec {
  const char* name;
  void (*run)(Context&);
  bool (*applies)(Scalar d, std::size_t n);
};

bool always(Scalar, std::size_t) { return true; }
bool only_d2(Scalar d, std::size_t) { return d == 2; }
bool prime_only(Scalar d, std::size_t) { return Modulus(d).is_prime(); }
bool several_systems(Scalar, std::size_t n) { return n >= 2; }

const std::vector<CheckSpec>& specs() {
  static const std::vector<CheckSpec> list{
      {"algebra_identities", algebra_identities, always},
      {"state_counting", state_counting, always},
      {"measurement_update", measurement_update, always},
      {"update_equivalence", update_equivalence, only_d2},
      {"mixture_soundness", mixture_soundness, always},
      {"superposition_soundness", superposition_soundness, prime_only},
      {"pure_decomposition", pure_decomposition, prime_only},
      {"stabilizer_correspondence", stabilizer_correspondence, only_d2},
      {"entanglement_classes", entanglement_classes, several_systems},
      {"transformation_transport", transformation_transport, always},
  };
  return list;
}

unsigned thread_count(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("TOYTHEORY_ORACLE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

bool Report::all_passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

std::string Report::to_json(bool with_timings) const {
  nlohmann::ordered_json out;
  out["passed"] = all_passed();
  out["failures"] = failures();
  auto list = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["d"] = c.d;
    j["n"] = c.n;
    j["passed"] = c.passed;
    j["cases"] = c.cases;
    if (!c.counterexample.empty()) j["counterexample"] = c.counterexample;
    if (!c.note.empty()) j["note"] = c.note;
    if (with_timings) j["millis"] = c.millis;
    list.push_back(j);
  }
  out["checks"] = list;
  return out.dump();
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& s : specs()) out.emplace_back(s.name);
  return out;
}

Report run_oracle(const Options& options) {
  struct Job {
    const CheckSpec* spec;
    Scalar d;
    std::size_t n;
    std::size_t index;
  };
  std::vector<Scalar> moduli = options.moduli;
  std::vector<std::size_t> sizes = options.sizes;
  std::sort(moduli.begin(), moduli.end());
  std::sort(sizes.begin(), sizes.end());
  std::vector<Job> jobs;
  for (const auto d : moduli)
    for (const auto n : sizes)
      for (std::size_t k = 0; k < specs().size(); ++k)
        if (specs()[k].applies(d, n)) jobs.push_back({&specs()[k], d, n, k});

  Report report;
  report.checks.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& job = jobs[i];
      auto& out = report.checks[i];
      out.name = job.spec->name;
      out.d = job.d;
      out.n = job.n;
      const auto start = std::chrono::steady_clock::now();
      try {
        const Modulus d(job.d);
        std::seed_seq seq{options.seed, static_cast<std::uint64_t>(job.d), static_cast<std::uint64_t>(job.n),
                          static_cast<std::uint64_t>(job.index)};
        Context cx{d, job.n, PhaseSpace(job.n, d), std::mt19937_64(seq), options.fuzz_cases, 0, {}};
        try {
          job.spec->run(cx);
        } catch (const Counterexample& c) {
          out.passed = false;
          out.counterexample = c.text;
        }
        out.cases = cx.cases;
        out.note = cx.note;
      } catch (const std::exception& e) {
        out.passed = false;
        out.counterexample = std::string("unexpected error: ") + e.what();
      }
      out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const unsigned count = std::min<unsigned>(thread_count(options.threads), static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return report;
}

}  // namespace toytheory::oracle
