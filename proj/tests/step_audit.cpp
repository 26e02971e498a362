#include <gtest/gtest.h>

#include "firefighter/propagation.hpp"

namespace {

// Fails the run if any simulation in this process took more steps than it
// burned vertices.
class StepAudit : public ::testing::Environment {
public:
  void TearDown() override {
    EXPECT_EQ(firefighter::simulation_stats().step_bound_violations.load(), 0u);
  }
};

const auto *const kAudit =
    ::testing::AddGlobalTestEnvironment(new StepAudit);

} // namespace
