#include <gtest/gtest.h>

#include "worked_examples.hpp"

namespace {

const std::vector<golden::Example>& all() {
  static const auto list = golden::examples(TOYTHEORY_GOLDEN_DIR);
  return list;
}

class Golden : public ::testing::TestWithParam<std::size_t> {};

TEST_P(Golden, Reproduces) {
  const auto& ex = all()[GetParam()];
  EXPECT_EQ(ex.check(), "") << ex.name;
}

INSTANTIATE_TEST_SUITE_P(Examples, Golden, ::testing::Range<std::size_t>(0, all().size()),
                         [](const auto& info) { return all()[info.param].name; });

}  // namespace
