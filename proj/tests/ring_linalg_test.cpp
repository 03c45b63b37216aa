#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "brute_force.hpp"
#include "toytheory/errors.hpp"
#include "toytheory/ring_linalg.hpp"

using namespace toytheory;

namespace {

Submodule span_of(std::initializer_list<std::vector<Scalar>> rows, Scalar d, std::size_t ambient) {
  std::vector<ModVector> vs;
  for (const auto& r : rows) vs.emplace_back(r, Modulus(d));
  return howell_form(vs, Modulus(d), ambient);
}

std::set<bf::Vec> elements_of(const Submodule& v) { return bf::as_set(v.elements()); }

}  // namespace

TEST(Modulus, RejectsOutOfRange) {
  EXPECT_THROW(Modulus(1), ToyError);
  EXPECT_THROW(Modulus(0), ToyError);
  EXPECT_NO_THROW(Modulus(Scalar{1} << 31));
  EXPECT_THROW(Modulus((Scalar{1} << 31) + 1), ToyError);
}

TEST(Modulus, ArithmeticWraps) {
  const Modulus d(7);
  EXPECT_EQ(d.reduce(-1), 6);
  EXPECT_EQ(d.mul(5, 4), 6);
  EXPECT_EQ(d.neg(3), 4);
  EXPECT_TRUE(d.is_prime());
  EXPECT_FALSE(Modulus(6).is_prime());
  const Modulus big(Scalar{1} << 31);
  EXPECT_EQ(big.mul(big.value() - 1, big.value() - 1), 1);
}

TEST(ExtendedGcd, BezoutIdentity) {
  for (Scalar a = 0; a < 30; ++a)
    for (Scalar b = 0; b < 30; ++b) {
      auto [g, s, t] = extended_gcd(a, b);
      EXPECT_EQ(s * a + t * b, g);
      EXPECT_EQ(g, std::gcd(a, b));
    }
}

TEST(HowellForm, SingleRowOverZ2) {
  const auto v = span_of({{1, 1}}, 2, 2);
  ASSERT_EQ(v.basis().size(), 1u);
  EXPECT_EQ(v.basis()[0], ModVector({1, 1}, Modulus(2)));
  EXPECT_EQ(elements_of(v), (std::set<bf::Vec>{{0, 0}, {1, 1}}));
}

TEST(HowellForm, MixedTorsionOverZ4) {
  const auto v = span_of({{2, 0}, {0, 1}}, 4, 2);
  EXPECT_EQ(v.cardinality(), 8u);
  EXPECT_EQ(elements_of(v), bf::span({{2, 0}, {0, 1}}, 4, 2));
}

TEST(HowellForm, EmptyRowsGiveZero) {
  const auto v = howell_form(std::vector<ModVector>{}, Modulus(3), 2);
  EXPECT_TRUE(v.is_zero());
  EXPECT_EQ(v, Submodule::zero(Modulus(3), 2));
  EXPECT_EQ(elements_of(v), (std::set<bf::Vec>{{0, 0}}));
}

TEST(HowellForm, RejectsWrongLength) {
  std::vector<ModVector> rows{ModVector({1, 0, 1}, Modulus(2))};
  EXPECT_THROW(howell_form(rows, Modulus(2), 2), ToyError);
}

TEST(Kernel, Examples) {
  EXPECT_TRUE(kernel(ModMatrix::identity(2), Modulus(2)).is_zero());

  ModMatrix two(1, 1);
  two.at(0, 0) = 2;
  EXPECT_EQ(elements_of(kernel(two, Modulus(4))), (std::set<bf::Vec>{{0}, {2}}));

  ModMatrix first(1, 2);
  first.at(0, 0) = 1;
  EXPECT_EQ(kernel(first, Modulus(2)), span_of({{0, 1}}, 2, 2));
}

TEST(OrthogonalComplement, Examples) {
  EXPECT_EQ(orthogonal_complement(span_of({{1, 0}}, 2, 2)), span_of({{0, 1}}, 2, 2));
  EXPECT_EQ(orthogonal_complement(Submodule::zero(Modulus(3), 2)), Submodule::full(Modulus(3), 2));
  const auto v = span_of({{2, 2}}, 4, 2);
  const auto w = orthogonal_complement(v);
  EXPECT_EQ(w.cardinality(), 8u);
  EXPECT_EQ(v.cardinality() * w.cardinality(), 16u);
  EXPECT_EQ(elements_of(w), bf::perp(elements_of(v), 4, 2));
}

TEST(SumIntersect, Examples) {
  const auto v = span_of({{1, 0, 0, 0}, {0, 1, 0, 0}}, 2, 4);
  const auto w = span_of({{0, 1, 0, 0}, {0, 0, 1, 0}}, 2, 4);
  EXPECT_EQ(sum(v, Submodule::zero(Modulus(2), 4)), v);
  EXPECT_EQ(intersect(v, v), v);
  EXPECT_EQ(intersect(v, w), span_of({{0, 1, 0, 0}}, 2, 4));
  EXPECT_TRUE(is_subset(intersect(v, w), v));
  EXPECT_FALSE(is_subset(v, w));
}

TEST(CosetIntersect, Examples) {
  const Modulus d(2);
  const AffineCoset a(span_of({{0, 1}}, 2, 2), ModVector({1, 0}, d));
  const AffineCoset b(span_of({{1, 0}}, 2, 2), ModVector({0, 1}, d));
  EXPECT_EQ(coset_intersect(a, a), a);
  auto ab = coset_intersect(a, b);
  ASSERT_TRUE(ab.has_value());
  EXPECT_EQ(bf::as_set(ab->elements()), (std::set<bf::Vec>{{1, 1}}));

  const AffineCoset c(span_of({{0, 1}}, 2, 2), ModVector({0, 0}, d));
  EXPECT_FALSE(coset_intersect(a, c).has_value());
}

TEST(Cardinality, Examples) {
  EXPECT_EQ(cardinality(Submodule::zero(Modulus(5), 3)), 1u);
  EXPECT_EQ(cardinality(span_of({{1, 1}}, 2, 2)), 2u);
  EXPECT_EQ(cardinality(span_of({{2, 2}}, 4, 2)), 2u);
}

TEST(Cardinality, OverflowIsReported) {
  const auto full = Submodule::full(Modulus(Scalar{1} << 31), 3);
  EXPECT_THROW(full.cardinality(), ToyError);
}

TEST(Solve, FindsCombination) {
  const Modulus d(6);
  std::vector<ModVector> rows{ModVector({2, 0}, d), ModVector({0, 3}, d)};
  auto c = solve(rows, ModVector({4, 3}, d), d);
  ASSERT_TRUE(c.has_value());
  ModVector acc(2);
  for (std::size_t i = 0; i < rows.size(); ++i) acc = add(acc, scale((*c)[i], rows[i], d), d);
  EXPECT_EQ(acc, ModVector({4, 3}, d));
  EXPECT_FALSE(solve(rows, ModVector({1, 0}, d), d).has_value());
}

TEST(AllVectors, LastCoordinateFastest) {
  const auto all = all_vectors(Modulus(3), 2);
  ASSERT_EQ(all.size(), 9u);
  EXPECT_EQ(all[1], ModVector({0, 1}, Modulus(3)));
  EXPECT_EQ(all[3], ModVector({1, 0}, Modulus(3)));
}

class LinalgFuzz : public ::testing::TestWithParam<Scalar> {};

TEST_P(LinalgFuzz, AgreesWithClosure) {
  const Scalar d = GetParam();
  const Modulus m(d);
  std::mt19937_64 rng(0xa11 + static_cast<std::uint64_t>(d));
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 1 + rng() % (d <= 3 ? 4 : 3);
    const auto gv = bf::random_gens(rng, d, k, 4);
    const auto gw = bf::random_gens(rng, d, k, 4);
    const auto v = howell_form(bf::to_mod(gv, d), m, k);
    const auto w = howell_form(bf::to_mod(gw, d), m, k);
    const auto sv = bf::span(gv, d, k);
    const auto sw = bf::span(gw, d, k);

    ASSERT_EQ(elements_of(v), sv);
    ASSERT_EQ(v.cardinality(), sv.size());
    ASSERT_EQ(howell_form(v.basis(), m, k), v);

    // A shuffled, redundant generator list of the same span gives the same basis.
    auto gens2 = gv;
    for (const auto& x : sv)
      if (rng() % 3 == 0) gens2.push_back(x);
    std::shuffle(gens2.begin(), gens2.end(), rng);
    ASSERT_EQ(howell_form(bf::to_mod(gens2, d), m, k), v);

    ASSERT_EQ(elements_of(orthogonal_complement(v)), bf::perp(sv, d, k));
    ASSERT_EQ(orthogonal_complement(orthogonal_complement(v)), v);

    std::set<bf::Vec> both;
    for (const auto& x : sv)
      if (sw.count(x)) both.insert(x);
    ASSERT_EQ(elements_of(intersect(v, w)), both);
    auto gs = gv;
    gs.insert(gs.end(), gw.begin(), gw.end());
    ASSERT_EQ(elements_of(sum(v, w)), bf::span(gs, d, k));

    const auto x = bf::random_vec(rng, d, k);
    const ModVector xm(x, m);
    ASSERT_EQ(v.contains(xm), sv.count(x) > 0);
    // reduce gives the smallest member of the coset.
    bf::Vec best = x;
    for (const auto& y : sv) best = std::min(best, bf::vadd(x, y, d));
    ASSERT_EQ(v.reduce(xm).entries(), best);
  }
}

TEST_P(LinalgFuzz, CosetIntersectionAgreesWithEnumeration) {
  const Scalar d = GetParam();
  const Modulus m(d);
  std::mt19937_64 rng(0xc05e7 + static_cast<std::uint64_t>(d));
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 1 + rng() % 3;
    const auto gv = bf::random_gens(rng, d, k, 3);
    const auto gw = bf::random_gens(rng, d, k, 3);
    const auto a0 = bf::random_vec(rng, d, k);
    const auto b0 = bf::random_vec(rng, d, k);
    const AffineCoset a(howell_form(bf::to_mod(gv, d), m, k), ModVector(a0, m));
    const AffineCoset b(howell_form(bf::to_mod(gw, d), m, k), ModVector(b0, m));
    std::set<bf::Vec> expected;
    for (const auto& x : bf::span(gv, d, k)) {
      const auto p = bf::vadd(x, a0, d);
      if (b.contains(ModVector(p, m))) expected.insert(p);
    }
    const auto got = coset_intersect(a, b);
    if (expected.empty()) {
      ASSERT_FALSE(got.has_value());
    } else {
      ASSERT_TRUE(got.has_value());
      ASSERT_EQ(bf::as_set(got->elements()), expected);
      ASSERT_EQ(got->offset().entries(), *expected.begin());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Moduli, LinalgFuzz, ::testing::Values(2, 3, 4, 5, 6, 8, 9, 12));
