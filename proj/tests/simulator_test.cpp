#include <gtest/gtest.h>

#include "rrp/errors.hpp"
#include "rrp/simulator.hpp"
#include "support/example.hpp"

using namespace rrp;

TEST(Simulator, DeterministicEqualsExpectation) {
  const Graph g = fixture::example();
  const Path p = validate_path(g, fixture::ids(g, "adabcad"));
  for (double gamma : {0.3, 0.5, 1.0}) {
    const auto spec = RewardSpec::uniform(4, 2.0, gamma);
    const auto r = simulate_finite_reward(
        g, spec, p, {.trials = 3, .generation = Generation::kDeterministic, .horizon = 6});
    EXPECT_NEAR(r.mean, r_sum_finite(spec, p).value, 1e-12);
    EXPECT_DOUBLE_EQ(r.standard_error, 0.0);
  }
}

TEST(Simulator, HorizonMismatch) {
  const Graph g = fixture::example();
  const Path p = validate_path(g, fixture::ids(g, "abc"));
  EXPECT_THROW(simulate_finite_reward(g, RewardSpec::uniform(4, 1, 0.5), p, {.horizon = 3}),
               HorizonMismatchError);
}

TEST(Simulator, ThreadCountDoesNotChangeResult) {
  const Graph g = fixture::example();
  const Path p = validate_path(g, fixture::ids(g, "adabcad"));
  const auto spec = RewardSpec::uniform(4, 1.5, 0.6);
  const auto one = simulate_finite_reward(g, spec, p, {.trials = 500, .seed = 9, .horizon = 6, .threads = 1});
  const auto four = simulate_finite_reward(g, spec, p, {.trials = 500, .seed = 9, .horizon = 6, .threads = 4});
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.standard_error, four.standard_error);
  const auto other = simulate_finite_reward(g, spec, p, {.trials = 500, .seed = 10, .horizon = 6});
  EXPECT_NE(one.mean, other.mean);
}

TEST(Simulator, AverageRewardWithinNoise) {
  const Graph g = fixture::example();
  const auto spec = RewardSpec::uniform(4, 1.0, 0.5);
  const auto upp = make_lasso(g, {}, fixture::ids(g, "abcad"));
  const auto r = simulate_average_reward(g, spec, upp, {.trials = 2000, .seed = 1, .horizon = 500});
  // finite-window value: steady state minus the warm-up shortfall, which is O(1/horizon)
  EXPECT_NEAR(r.mean, fixture::abcad(0.5), 4 * r.standard_error + 0.01);
  EXPECT_THROW(simulate_average_reward(g, spec, upp, {.horizon = 100}), InvalidArgumentError);
}
