#include <gtest/gtest.h>

#include <map>
#include <random>

#include "brute_force.hpp"
#include "toytheory/catalog.hpp"
#include "toytheory/errors.hpp"
#include "toytheory/measurement.hpp"

using namespace toytheory;

namespace {

std::set<bf::Vec> support_set(const EpistemicState& s) { return bf::as_set(support(s).elements()); }

// Posterior support from the definition: agree with v_pi on V_pi and with the
// prior on the part of V that commutes with V_pi.
std::set<bf::Vec> brute_update(const EpistemicState& s, const Submodule& v_pi, const bf::Vec& outcome) {
  const Scalar d = s.modulus().value();
  const auto vpi = bf::as_set(v_pi.elements());
  std::set<bf::Vec> commuting;
  for (const auto& f : bf::as_set(s.known().elements())) {
    if (std::all_of(vpi.begin(), vpi.end(), [&](const bf::Vec& g) { return bf::symp(f, g, d) == 0; }))
      commuting.insert(f);
  }
  std::set<bf::Vec> out;
  for (const auto& m : bf::space(d, outcome.size())) {
    bool ok = true;
    for (const auto& f : vpi) ok = ok && bf::vdot(f, m, d) == bf::vdot(f, outcome, d);
    for (const auto& f : commuting) ok = ok && bf::vdot(f, m, d) == bf::vdot(f, s.valuation().entries(), d);
    if (ok) out.insert(m);
  }
  return out;
}

std::vector<Submodule> isotropic_catalog_submodules(Modulus d, std::size_t n) {
  std::set<Submodule> seen;
  for (const auto& s : state_catalog(d, n)) seen.insert(s.known());
  return {seen.begin(), seen.end()};
}

}  // namespace

TEST(Measurement, RejectsNonIsotropic) {
  const PhaseSpace ps(1, Modulus(3));
  EXPECT_THROW(Measurement(ps, {ps.q(0), ps.p(0)}), ToyError);
}

TEST(Outcomes, OwnObservablesOnPureState) {
  const PhaseSpace ps(1, Modulus(2));
  const auto s = make_state(ps, {ps.q(0)}, ps.vec({1, 0}));
  const auto os = outcomes(Measurement(s.known()), s);
  ASSERT_EQ(os.size(), 1u);
  EXPECT_EQ(os[0].probability, Probability(1));
}

TEST(Outcomes, ConjugateObservableSplitsEvenly) {
  const PhaseSpace ps(1, Modulus(2));
  const auto s = make_state(ps, {ps.q(0)}, ps.vec({1, 0}));
  const auto os = outcomes(Measurement(ps, {ps.p(0)}), s);
  ASSERT_EQ(os.size(), 2u);
  for (const auto& o : os) EXPECT_EQ(o.probability, Probability(1, 2));

  const auto full = outcomes(Measurement(ps, {ps.q(0)}), full_ignorance(ps));
  ASSERT_EQ(full.size(), 2u);
  for (const auto& o : full) EXPECT_EQ(o.probability, Probability(1, 2));
}

TEST(Update, SimpleExample) {
  const PhaseSpace ps(1, Modulus(2));
  const auto s = make_state(ps, {ps.q(0)}, ps.vec({1, 0}));
  const Measurement m(ps, {ps.p(0)});
  EXPECT_TRUE(commuting_part(m, s).is_zero());
  const auto post = update(m, ps.vec({1, 1}), s);
  EXPECT_EQ(post.known(), m.observables());
  EXPECT_EQ(support_set(post), (std::set<bf::Vec>{{0, 1}, {1, 1}}));
  EXPECT_EQ(render_grid(post), "··██\n");
}

TEST(Update, ComplexExample) {
  const PhaseSpace ps(3, Modulus(2));
  const auto s = make_state(ps, {ps.p(0), ps.p(1), ps.p(2)}, ps.zero());
  const Measurement m(ps, {ps.p(0), ps.p(1), ps.q(2)});
  EXPECT_EQ(commuting_part(m, s), howell_form(std::vector<ModVector>{ps.p(0), ps.p(1)}, ps.modulus(), 6));
  const auto post = update(m, ps.zero(), s);
  EXPECT_EQ(post, make_state(ps, {ps.p(0), ps.p(1), ps.q(2)}, ps.zero()));
}

TEST(Update, RepeatingAKnownObservableIsANoOp) {
  for (Scalar d : {2, 3, 4}) {
    for (const auto& s : state_catalog(Modulus(d), 1)) {
      if (s.known().is_zero()) continue;
      EXPECT_EQ(update(Measurement(s.known()), s.valuation(), s), s);
    }
  }
}

TEST(Update, IncompatibleOutcomeIsRejected) {
  const PhaseSpace ps(1, Modulus(2));
  const auto s = make_state(ps, {ps.q(0)}, ps.vec({1, 0}));
  try {
    update(Measurement(ps, {ps.q(0)}), ps.zero(), s);
    FAIL();
  } catch (const ToyError& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompatibleOutcome);
  }
}

// Probabilities and posteriors over every catalog state and every isotropic
// measurement, checked against counting.
TEST(Update, ExhaustiveAgainstBruteForce) {
  struct Shape {
    Scalar d;
    std::size_t n;
  };
  for (const Shape sh : {Shape{2, 1}, Shape{3, 1}, Shape{4, 1}, Shape{2, 2}}) {
    const Modulus d(sh.d);
    const auto subs = isotropic_catalog_submodules(d, sh.n);
    for (const auto& s : state_catalog(d, sh.n)) {
      const auto supp = support_set(s);
      for (const auto& vpi : subs) {
        const Measurement m(vpi);
        const auto os = outcomes(m, s);
        // Count support points per outcome class.
        std::map<bf::Vec, std::size_t> counts;
        const auto vpi_elems = bf::as_set(vpi.elements());
        for (const auto& pt : supp) {
          bf::Vec key;
          for (const auto& f : vpi_elems) key.push_back(bf::vdot(f, pt, sh.d));
          ++counts[key];
        }
        ASSERT_EQ(os.size(), counts.size());
        Probability total(0);
        for (const auto& o : os) {
          total += o.probability;
          bf::Vec key;
          for (const auto& f : vpi_elems) key.push_back(bf::vdot(f, o.valuation.entries(), sh.d));
          ASSERT_EQ(o.probability, Probability(static_cast<std::int64_t>(counts.at(key)),
                                               static_cast<std::int64_t>(supp.size())));
          const auto post = update(m, o.valuation, s);
          ASSERT_EQ(support_set(post), brute_update(s, vpi, o.valuation.entries()));
          // Measuring again reproduces the outcome with certainty.
          ASSERT_EQ(update(m, o.valuation, post), post);
          ASSERT_EQ(outcome_probability(m, o.valuation, post), Probability(1));
          // Every point of the posterior lies in the outcome cell.
          ASSERT_TRUE(is_subset(vpi, post.known()));
        }
        ASSERT_EQ(total, Probability(1));
      }
    }
  }
}

TEST(Update, MaximalMeasurementOnPrimeGivesPureState) {
  for (Scalar d : {2, 3}) {
    const Modulus md(d);
    for (const auto& s : state_catalog(md, 2)) {
      for (const auto& t : state_catalog(md, 2)) {
        if (!is_pure(t) || t.valuation() != PhaseSpace(2, md).zero()) continue;
        const Measurement m(t.known());
        for (const auto& o : outcomes(m, s)) ASSERT_TRUE(is_pure(update(m, o.valuation, s)));
      }
    }
  }
}

TEST(Sample, DeterministicAndCoversOutcomes) {
  const PhaseSpace ps(1, Modulus(3));
  const auto s = make_state(ps, {ps.q(0)}, ps.vec({2, 0}));
  const Measurement m(ps, {ps.p(0)});
  std::mt19937_64 a(7), b(7);
  std::map<ModVector, int> hits;
  for (int i = 0; i < 3000; ++i) {
    auto [oa, sa] = sample(m, s, a);
    auto [ob, sb] = sample(m, s, b);
    ASSERT_EQ(oa.valuation, ob.valuation);
    ASSERT_EQ(sa, update(m, oa.valuation, s));
    ++hits[oa.valuation];
  }
  ASSERT_EQ(hits.size(), 3u);
  for (const auto& [v, c] : hits) EXPECT_NEAR(c, 1000, 150);
}

TEST(PartitionIsMeasurement, ValuationClassesOfOneMeasurement) {
  const PhaseSpace ps(2, Modulus(3));
  const Measurement m(ps, {ps.q(0), ps.p(1)});
  std::vector<EpistemicState> cells;
  for (const auto& o : outcomes(m, full_ignorance(ps))) cells.push_back(make_state(ps, m.observables(), o.valuation));
  EXPECT_EQ(cells.size(), 9u);
  EXPECT_TRUE(partition_is_measurement(cells));
}

TEST(PartitionIsMeasurement, FourCellsWithDifferentKnownSets) {
  const PhaseSpace ps(2, Modulus(2));
  const auto xx = ps.vec({1, 0, 1, 0});
  const auto zz = ps.vec({0, 1, 0, 1});
  std::vector<EpistemicState> cells{
      make_state(ps, {xx, zz}, ps.zero()),
      make_state(ps, {xx, zz}, ps.vec({1, 0, 0, 0})),
      make_state(ps, {ps.p(0), ps.p(1)}, ps.vec({0, 0, 0, 1})),
      make_state(ps, {ps.p(0), ps.p(1)}, ps.vec({0, 1, 0, 0})),
  };
  EXPECT_FALSE(partition_is_measurement(cells));
}

TEST(PartitionIsMeasurement, RejectsNonPartitions) {
  const PhaseSpace ps(1, Modulus(2));
  const auto a = make_state(ps, {ps.q(0)}, ps.zero());
  try {
    partition_is_measurement({a, a});
    FAIL();
  } catch (const ToyError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAPartition);
  }
  EXPECT_THROW(partition_is_measurement({a}), ToyError);
}
