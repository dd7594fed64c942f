#include <gtest/gtest.h>

#include "property_suite.hpp"

TEST(Properties, AllSuitesHold) {
  std::size_t total = 0;
  for (const auto& s : rescert::props::run_all()) {
    EXPECT_EQ(s.failures, 0u) << s.name << ": " << s.first_failure;
    EXPECT_GE(s.cases, 100u) << s.name;
    total += s.cases;
  }
  EXPECT_GE(total, 1000u);
}
