#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "toytheory/catalog.hpp"
#include "toytheory/errors.hpp"
#include "toytheory/measurement.hpp"
#include "toytheory/original_d2.hpp"
#include "toytheory/transformations.hpp"

using namespace toytheory;
using original::OnticLabelState;
using original::Question;
using original::SetEpistemicState;

namespace {

SetEpistemicState set_state(std::size_t n, std::set<OnticLabelState> basis) { return {n, std::move(basis)}; }

// Rows listed top to bottom (system-1 label 4 first), columns by system-2 label.
std::vector<SetEpistemicState> partition_from_grid(const std::array<std::array<int, 4>, 4>& grid) {
  std::map<int, std::set<OnticLabelState>> cells;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) cells[grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]].insert({4 - r, c + 1});
  std::vector<SetEpistemicState> out;
  for (auto& [k, v] : cells) out.emplace_back(2, v);
  return out;
}

std::set<std::set<bf::Vec>> as_supports(const std::vector<SetEpistemicState>& xs) {
  std::set<std::set<bf::Vec>> out;
  for (const auto& x : xs) out.insert(bf::as_set(x.points()));
  return out;
}

}  // namespace

TEST(Validity, SingleSystemList) {
  const std::vector<std::set<OnticLabelState>> valid{{{1}, {2}}, {{3}, {4}}, {{1}, {3}}, {{2}, {4}},
                                                     {{1}, {4}}, {{2}, {3}}, {{1}, {2}, {3}, {4}}};
  for (const auto& b : valid) EXPECT_TRUE(original::is_valid_state(set_state(1, b)));
  EXPECT_EQ(original::valid_states(1).size(), valid.size());
  EXPECT_FALSE(original::is_valid_state(set_state(1, {{1}})));
  EXPECT_FALSE(original::is_valid_state(set_state(1, {{1}, {2}, {3}})));
}

TEST(Validity, NamedInvalidStates) {
  const auto column = original::validity(set_state(2, {{1, 1}, {2, 1}, {3, 1}, {4, 1}}));
  EXPECT_FALSE(column.valid());
  EXPECT_EQ(column.reason, kNotIsotropicSupport);
  const auto hook = original::validity(set_state(2, {{4, 2}, {3, 1}, {2, 1}, {1, 1}}));
  EXPECT_FALSE(hook.valid());
  EXPECT_EQ(hook.reason, kNotACoset);
}

TEST(Validity, RoundTripThroughGeneral) {
  for (std::size_t n : {1u, 2u}) {
    for (const auto& e : original::valid_states(n)) {
      ASSERT_EQ(SetEpistemicState::from_general(original::to_general(e)), e);
    }
    for (const auto& s : state_catalog(Modulus(2), n)) {
      ASSERT_EQ(original::to_general(SetEpistemicState::from_general(s)), s);
    }
  }
  EXPECT_THROW(original::to_general(set_state(1, {{1}})), ToyError);
  EXPECT_THROW(set_state(1, {{5}}), ToyError);
}

// Sizes of valid states are 2^(2N-k) for k answered questions, 0 <= k <= N.
TEST(Validity, SizeLaw) {
  for (std::size_t n : {1u, 2u, 3u}) {
    std::set<std::size_t> sizes;
    for (const auto& e : original::valid_states(n)) sizes.insert(e.size());
    std::set<std::size_t> expected;
    for (std::size_t k = 0; k <= n; ++k) expected.insert(std::size_t{1} << (2 * n - k));
    EXPECT_EQ(sizes, expected);
  }
}

TEST(Questions, Canonical) {
  const Question in12{{{1}, {2}}};
  const Question in13{{{1}, {3}}};
  const Question in34{{{3}, {4}}};
  EXPECT_TRUE(original::is_canonical({in12, in13}, 1));
  EXPECT_FALSE(original::is_canonical({in12, in34}, 1));
  EXPECT_FALSE(original::is_canonical({in12, in12}, 1));
  try {
    original::is_canonical({in12}, 1);
    FAIL();
  } catch (const ToyError& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongQuestionCount);
  }
}

TEST(Questions, AnswersSelectOnticStates) {
  const original::QuestionSet qs{Question{{{1}, {2}}}, Question{{{1}, {3}}}};
  EXPECT_EQ(original::ontic_basis_from_answers(qs, {{0, true}}, 1), set_state(1, {{1}, {2}}));
  EXPECT_EQ(original::ontic_basis_from_answers(qs, {}, 1).size(), 4u);
  EXPECT_EQ(original::ontic_basis_from_answers(qs, {{0, false}, {1, false}}, 1), set_state(1, {{4}}));
  EXPECT_THROW(original::ontic_basis_from_answers(qs, {{2, true}}, 1), ToyError);
}

TEST(Fidelity, Values) {
  const auto a = set_state(1, {{1}, {2}});
  const auto b = set_state(1, {{1}, {3}});
  EXPECT_DOUBLE_EQ(original::fidelity(a, a).value(), 1.0);
  EXPECT_DOUBLE_EQ(original::fidelity(a, set_state(1, {{3}, {4}})).value(), 0.0);
  EXPECT_DOUBLE_EQ(original::fidelity(a, b).value(), 0.5);
  EXPECT_TRUE(original::fidelity(a, b) < original::fidelity(a, a));
  EXPECT_TRUE((original::Fidelity{1, 4} == original::Fidelity{2, 16}));
}

TEST(CoarseMeasure, SingleSystemWalkthrough) {
  const std::vector<SetEpistemicState> partition{set_state(1, {{1}, {3}}), set_state(1, {{2}, {4}})};
  const auto r = original::coarse_measure(partition, set_state(1, {{1}, {2}}), {1});
  EXPECT_EQ(r.cell, 0u);
  EXPECT_EQ(r.state, set_state(1, {{1}, {3}}));
}

TEST(CoarseMeasure, GridExample) {
  const auto partition = partition_from_grid({{{1, 1, 3, 2}, {1, 1, 2, 3}, {3, 2, 1, 1}, {2, 3, 1, 1}}});
  ASSERT_EQ(partition.size(), 3u);
  const auto pre = set_state(2, {{3, 1}, {3, 2}, {2, 1}, {2, 2}});
  ASSERT_TRUE(original::is_valid_state(pre));

  const auto& cell = partition[0];
  const auto candidates = original::candidates_within(cell);
  // The five drawn candidates are among them.
  const std::vector<SetEpistemicState> drawn{
      cell,
      set_state(2, {{2, 3}, {2, 4}, {1, 3}, {1, 4}}),
      set_state(2, {{4, 1}, {4, 2}, {3, 1}, {3, 2}}),
      set_state(2, {{4, 2}, {3, 1}, {2, 4}, {1, 3}}),
      set_state(2, {{4, 1}, {3, 2}, {2, 3}, {1, 4}}),
  };
  for (const auto& d : drawn) {
    EXPECT_TRUE(original::is_valid_state(d));
    EXPECT_NE(std::find(candidates.begin(), candidates.end(), d), candidates.end());
  }
  // Brute force: every valid support inside the cell.
  const auto cell_pts = bf::as_set(cell.points());
  std::set<std::set<bf::Vec>> inside;
  for (const auto& s : bf::valid_supports(2, 2, 2))
    if (std::includes(cell_pts.begin(), cell_pts.end(), s.begin(), s.end())) inside.insert(s);
  EXPECT_EQ(as_supports(candidates), inside);
  EXPECT_EQ(candidates.size(), 7u);

  const auto r = original::coarse_measure(partition, pre, {3, 1});
  EXPECT_EQ(r.cell, 0u);
  EXPECT_EQ(r.state, drawn[2]);
  EXPECT_DOUBLE_EQ(original::fidelity(pre, r.state).value(), 0.5);
}

TEST(CoarseMeasure, Errors) {
  const auto a = set_state(1, {{1}, {3}});
  const auto b = set_state(1, {{2}, {4}});
  EXPECT_THROW(original::coarse_measure({a}, set_state(1, {{1}, {2}}), {1}), ToyError);
  EXPECT_THROW(original::coarse_measure({a, a}, set_state(1, {{1}, {2}}), {1}), ToyError);
  EXPECT_THROW(original::coarse_measure({a, b}, set_state(1, {{1}, {2}}), {3}), ToyError);
}

// A maximal-information partition acts like the generalized update.
TEST(CoarseMeasure, MaximalPartitionIsOrdinaryMeasurement) {
  const PhaseSpace ps(2, Modulus(2));
  for (const auto& t : state_catalog(Modulus(2), 2)) {
    if (!is_pure(t) || t.valuation() != ps.zero()) continue;
    const Measurement m(t.known());
    std::vector<SetEpistemicState> partition;
    for (const auto& o : outcomes(m, full_ignorance(ps)))
      partition.push_back(SetEpistemicState::from_general(make_state(ps, m.observables(), o.valuation)));
    for (const auto& s : state_catalog(Modulus(2), 2)) {
      const auto e = SetEpistemicState::from_general(s);
      for (const auto& truth : e.basis()) {
        const auto r = original::coarse_measure(partition, e, truth);
        ASSERT_EQ(original::candidates_within(partition[r.cell]).size(), 1u);
        ASSERT_EQ(r.state, partition[r.cell]);
      }
    }
  }
}

TEST(LocalEquivalence, Examples) {
  const auto one = original::valid_states(1);
  for (const auto& a : one)
    for (const auto& b : one)
      if (a.size() == 2 && b.size() == 2) EXPECT_TRUE(original::local_equivalence(a, b));
  const auto bell = set_state(2, {{1, 1}, {2, 2}, {3, 3}, {4, 4}});
  const auto product = set_state(2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  EXPECT_FALSE(original::local_equivalence(bell, product));
  EXPECT_TRUE(original::local_equivalence(bell, bell));
  const auto other = set_state(2, {{2, 1}, {1, 3}, {4, 2}, {3, 4}});
  EXPECT_TRUE(original::local_equivalence(bell, other));
}
