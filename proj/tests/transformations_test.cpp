#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "random_maps.hpp"
#include "toytheory/catalog.hpp"
#include "toytheory/entanglement.hpp"
#include "toytheory/errors.hpp"
#include "toytheory/stabilizer_d2.hpp"
#include "toytheory/transformations.hpp"

using namespace toytheory;

namespace {

std::set<bf::Vec> support_set(const EpistemicState& s) { return bf::as_set(support(s).elements()); }

ModMatrix matrix_of(std::initializer_list<std::initializer_list<Scalar>> rows, Scalar d) {
  std::vector<ModVector> rs;
  for (auto r : rows) rs.emplace_back(std::vector<Scalar>(r), Modulus(d));
  return ModMatrix(rs, rs.size());
}

// S^T J S == J computed entrywise.
bool symplectic_by_hand(const ModMatrix& s, Scalar d) {
  const std::size_t k = s.rows();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      bf::Vec ca(k), cb(k);
      for (std::size_t i = 0; i < k; ++i) {
        ca[i] = s.at(i, a);
        cb[i] = s.at(i, b);
      }
      bf::Vec ea(k, 0), eb(k, 0);
      ea[a] = 1;
      eb[b] = 1;
      if (bf::symp(ca, cb, d) != bf::symp(ea, eb, d)) return false;
    }
  return true;
}

}  // namespace

TEST(IsSymplectic, Examples) {
  EXPECT_TRUE(is_symplectic(ModMatrix::identity(4), Modulus(5)));
  EXPECT_TRUE(is_symplectic(matrix_of({{0, 1}, {1, 0}}, 2), Modulus(2)));
  EXPECT_FALSE(is_symplectic(matrix_of({{1, 0}, {0, 0}}, 2), Modulus(2)));
  EXPECT_FALSE(is_symplectic(matrix_of({{0, 1}, {1, 0}}, 3), Modulus(3)));
}

TEST(IsSymplectic, AgreesWithEntrywiseCheck) {
  std::mt19937_64 rng(3);
  for (Scalar d : {2, 3, 4, 6}) {
    for (int i = 0; i < 400; ++i) {
      ModMatrix s(2, 2);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) s.at(r, c) = static_cast<Scalar>(rng() % static_cast<std::uint64_t>(d));
      ASSERT_EQ(is_symplectic(s, Modulus(d)), symplectic_by_hand(s, d));
    }
  }
}

TEST(Apply, IdentityAndInvalidMap) {
  const PhaseSpace ps(1, Modulus(3));
  const auto s = make_state(ps, {ps.q(0)}, ps.vec({2, 0}));
  EXPECT_EQ(apply(SymplecticMap::identity(ps), s), s);
  const SymplecticMap bad(ps, matrix_of({{1, 0}, {0, 0}}, 3), ps.zero());
  try {
    apply(bad, s);
    FAIL();
  } catch (const ToyError& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidMap);
  }
}

TEST(Apply, DisplacementShiftsValuation) {
  const PhaseSpace ps(2, Modulus(3));
  const auto s = make_state(ps, {ps.vec({1, 0, 0, 0}), ps.vec({0, 0, 1, 0})}, ps.zero());
  const auto a = ps.vec({1, 0, 0, 0});
  const auto out = apply(displacement(a, ps), s);
  EXPECT_EQ(out.known(), s.known());
  EXPECT_EQ(out, make_state(ps, s.known(), a));
}

TEST(Apply, FourierThenCnotMakesBellAnalog) {
  const PhaseSpace ps(2, Modulus(2));
  const auto zz = make_state(ps, {ps.p(0), ps.p(1)}, ps.zero());
  EXPECT_EQ(apply(toy_cnot(0, 1, ps), zz), zz);
  const auto bell = make_state(ps, {ps.vec({1, 0, 1, 0}), ps.vec({0, 1, 0, 1})}, ps.zero());
  EXPECT_EQ(apply(compose(toy_cnot(0, 1, ps), fourier(0, ps)), zz), bell);
}

TEST(Cnot, ObservableTable) {
  const PhaseSpace ps(2, Modulus(2));
  const auto cnot = toy_cnot(0, 1, ps);
  auto image = [&](const std::string& word) {
    const auto g = stab::PauliWord::parse(word);
    const auto s = make_state(ps, {g.observable()}, ps.zero());
    return stab::PauliWord::from_observable(apply(cnot, s).known().basis().at(0)).str();
  };
  EXPECT_EQ(image("XI"), "+XX");
  EXPECT_EQ(image("IX"), "+IX");
  EXPECT_EQ(image("ZI"), "+ZI");
  EXPECT_EQ(image("IZ"), "+ZZ");
}

TEST(Cnot, InvolutionAtD2AndErrors) {
  const PhaseSpace ps(2, Modulus(2));
  const auto c = toy_cnot(0, 1, ps);
  EXPECT_EQ(compose(c, c), SymplecticMap::identity(ps));
  EXPECT_EQ(invert(c), c);
  EXPECT_THROW(toy_cnot(0, 0, ps), ToyError);
  EXPECT_THROW(toy_cnot(0, 2, ps), ToyError);
  const PhaseSpace p3(2, Modulus(3));
  EXPECT_NE(compose(toy_cnot(0, 1, p3), toy_cnot(0, 1, p3)), SymplecticMap::identity(p3));
}

TEST(Invert, Identity) {
  const PhaseSpace ps(2, Modulus(6));
  EXPECT_EQ(invert(SymplecticMap::identity(ps)), SymplecticMap::identity(ps));
}

// Random maps: validity, purity and support size survive, the support moves
// point by point, and the group laws hold.
TEST(Apply, FuzzTransport) {
  for (Scalar d : {2, 3, 4, 6}) {
    std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(d));
    for (std::size_t n : {1u, 2u}) {
      const PhaseSpace ps(n, Modulus(d));
      const auto& cat = state_catalog(Modulus(d), n);
      for (int trial = 0; trial < 300; ++trial) {
        const auto t = testing_maps::random_map(ps, rng);
        ASSERT_TRUE(is_symplectic(t.matrix(), ps.modulus()));
        ASSERT_TRUE(symplectic_by_hand(t.matrix(), d));
        const auto& s = cat[rng() % cat.size()];
        const auto out = apply(t, s);
        ASSERT_TRUE(is_isotropic(out.known()));
        ASSERT_EQ(is_pure(out), is_pure(s));
        ASSERT_EQ(support(out).cardinality(), support(s).cardinality());
        std::set<bf::Vec> moved;
        for (const auto& m : support(s).elements()) moved.insert(t(m).entries());
        ASSERT_EQ(support_set(out), moved);
        ASSERT_TRUE(std::binary_search(cat.begin(), cat.end(), out));

        const auto inv = invert(t);
        ASSERT_EQ(apply(inv, out), s);
        ASSERT_EQ(compose(inv, t), SymplecticMap::identity(ps));
        ASSERT_EQ(compose(t, inv), SymplecticMap::identity(ps));
        const auto u = testing_maps::random_map(ps, rng);
        ASSERT_EQ(apply(compose(u, t), s), apply(u, apply(t, s)));
      }
    }
  }
}

TEST(OnticPermutation, Basics) {
  EXPECT_THROW(OnticPermutation(1, {0, 0, 1, 2}), ToyError);
  EXPECT_THROW(OnticPermutation(1, {0, 1, 2}), ToyError);
  const auto p = OnticPermutation::local({{2, 1, 4, 3}});
  EXPECT_EQ(then(p, inverse(p)), OnticPermutation::identity(1));
  EXPECT_EQ(label_index({2, 3}), 6u);
  EXPECT_EQ(index_labels(6, 2), (std::vector<int>{2, 3}));
  EXPECT_EQ(labels_to_point({4}), ModVector({1, 1}, Modulus(2)));
  EXPECT_EQ(point_to_labels(ModVector({0, 1, 1, 0}, Modulus(2))), (std::vector<int>{3, 2}));
  EXPECT_THROW(OnticPermutation::from_map(SymplecticMap::identity(PhaseSpace(1, Modulus(3)))), ToyError);
}

TEST(OnticPermutation, EverySingleSystemPermutationIsValid) {
  std::array<int, 4> perm{1, 2, 3, 4};
  int count = 0;
  do {
    EXPECT_TRUE(permutation_is_valid(OnticPermutation::local({perm})));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(count, 24);
}

// At d=2 the affine symplectic maps of one system realize all 24 relabellings.
TEST(OnticPermutation, AffineMapsOfOneSystemAreAllPermutations) {
  const PhaseSpace ps(1, Modulus(2));
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& s : bf::space(2, 4)) {
    const auto m = matrix_of({{s[0], s[1]}, {s[2], s[3]}}, 2);
    if (!is_symplectic(m, ps.modulus())) continue;
    for (const auto& a : bf::space(2, 2)) {
      seen.insert(OnticPermutation::from_map(SymplecticMap(ps, m, ModVector(a, ps.modulus()))).targets());
    }
  }
  EXPECT_EQ(seen.size(), 24u);
}

TEST(OnticPermutation, CnotIsValidButEntangling) {
  const PhaseSpace ps(2, Modulus(2));
  const auto p = OnticPermutation::from_map(toy_cnot(0, 1, ps));
  EXPECT_TRUE(permutation_is_valid(p));
  const auto result = decompose_non_entangling(p);
  ASSERT_TRUE(std::holds_alternative<EntanglingWitness>(result));
  const auto& w = std::get<EntanglingWitness>(result);
  const auto bp = make_bipartition(2, {0});
  EXPECT_TRUE(is_product(w.input, bp));
  const auto image = state_from_support(ps, w.image);
  ASSERT_TRUE(image.valid());
  EXPECT_FALSE(is_product(*image.state, bp));
  // The image is the pointwise relabelling of the witness support.
  std::set<bf::Vec> expected;
  for (const auto& m : support(w.input).elements())
    expected.insert(labels_to_point(index_labels(p(label_index(point_to_labels(m))), 2)).entries());
  EXPECT_EQ(bf::as_set(w.image), expected);
}

TEST(OnticPermutation, ShrinkingSupportIsInvalid) {
  // Exchanging (1,1) and (3,3) breaks the coset {1,2} x {1,2,3,4}.
  auto t = OnticPermutation::identity(2).targets();
  std::swap(t[label_index({1, 1})], t[label_index({3, 3})]);
  EXPECT_FALSE(permutation_is_valid(OnticPermutation(2, t)));
}

TEST(Decompose, SwapAndLocals) {
  const auto swap = OnticPermutation::system_swap({1, 0});
  const auto r1 = decompose_non_entangling(swap);
  ASSERT_TRUE(std::holds_alternative<NonEntanglingDecomposition>(r1));
  const auto& d1 = std::get<NonEntanglingDecomposition>(r1);
  EXPECT_EQ(d1.order, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(d1.locals, (std::vector<std::array<int, 4>>{{1, 2, 3, 4}, {1, 2, 3, 4}}));

  const std::vector<std::array<int, 4>> locals{{3, 1, 4, 2}, {2, 4, 1, 3}};
  const auto r2 = decompose_non_entangling(OnticPermutation::local(locals));
  ASSERT_TRUE(std::holds_alternative<NonEntanglingDecomposition>(r2));
  EXPECT_EQ(std::get<NonEntanglingDecomposition>(r2).locals, locals);
}

TEST(Decompose, RecomposesEveryLocalTimesSwap) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::array<int, 4>> locals(2, {1, 2, 3, 4});
    for (auto& l : locals) std::shuffle(l.begin(), l.end(), rng);
    std::vector<std::size_t> order{0, 1};
    if (rng() % 2) std::swap(order[0], order[1]);
    const auto p = then(OnticPermutation::system_swap(order), OnticPermutation::local(locals));
    ASSERT_TRUE(permutation_is_valid(p));
    const auto r = decompose_non_entangling(p);
    ASSERT_TRUE(std::holds_alternative<NonEntanglingDecomposition>(r));
    ASSERT_EQ(std::get<NonEntanglingDecomposition>(r).recompose(), p);
  }
}

TEST(IrreversibleApply, Examples) {
  const PhaseSpace one(1, Modulus(2));
  const PhaseSpace two(2, Modulus(2));
  const auto s = make_state(one, {one.q(0)}, one.vec({1, 0}));
  const auto ancilla_full = full_ignorance(one);
  EXPECT_EQ(irreversible_apply(SymplecticMap::identity(two), ancilla_full, s), s);
  EXPECT_EQ(irreversible_apply(swap_systems(0, 1, two), ancilla_full, s), full_ignorance(one));

  // Ancilla in the Z-analog eigenstate: CNOT copies the system's X value away.
  const auto ancilla = make_state(one, {one.p(0)}, one.zero());
  const auto out = irreversible_apply(toy_cnot(0, 1, two), ancilla, s);
  EXPECT_EQ(support(out).cardinality(), 2 * support(s).cardinality());
  // Brute force: project the joint image onto system 0.
  const auto joint = tensor_product(s, ancilla);
  std::set<bf::Vec> projected;
  for (const auto& m : support(joint).elements()) {
    const auto x = toy_cnot(0, 1, two)(m);
    projected.insert({x[0], x[1]});
  }
  EXPECT_EQ(support_set(out), projected);
}

// Words of up to four generators act on diagonal toy observables by
// conjugation; the result is again a signed toy Pauli word.
TEST(CliffordClosure, GeneratedPermutationsMapWordsToWords) {
  const PhaseSpace ps(2, Modulus(2));
  const std::vector<SymplecticMap> gens{fourier(0, ps), fourier(1, ps), phase_shear(0, ps), phase_shear(1, ps),
                                        toy_cnot(0, 1, ps), toy_cnot(1, 0, ps)};
  std::vector<stab::PauliWord> words;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (bool neg : {false, true})
        words.emplace_back(neg, std::vector<stab::Letter>{static_cast<stab::Letter>(a), static_cast<stab::Letter>(b)});
  auto eigen_table = [&](const stab::PauliWord& w) {
    std::vector<int> t(16);
    for (std::uint32_t i = 0; i < 16; ++i) t[i] = stab::eigenvalue(w, index_labels(i, 2));
    return t;
  };
  std::map<std::vector<int>, std::size_t> table_to_word;
  for (std::size_t i = 0; i < words.size(); ++i) table_to_word[eigen_table(words[i])] = i;
  ASSERT_EQ(table_to_word.size(), words.size());

  std::set<std::vector<std::uint32_t>> perms;
  std::vector<SymplecticMap> frontier{SymplecticMap::identity(ps)};
  for (int len = 0; len <= 4; ++len) {
    std::vector<SymplecticMap> next;
    for (const auto& t : frontier) {
      const auto p = OnticPermutation::from_map(t);
      if (!perms.insert(p.targets()).second && len > 0) continue;
      const auto pinv = inverse(p);
      for (const auto& w : words) {
        const auto base = eigen_table(w);
        std::vector<int> conj(16);
        for (std::uint32_t i = 0; i < 16; ++i) conj[i] = base[pinv(i)];
        ASSERT_TRUE(table_to_word.count(conj)) << w.str();
      }
      for (const auto& g : gens) next.push_back(compose(g, t));
    }
    frontier = std::move(next);
  }
  EXPECT_GT(perms.size(), 24u);
}
