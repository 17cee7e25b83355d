#include <gtest/gtest.h>

#include <random>

#include "rrp/errors.hpp"
#include "rrp/finite_horizon.hpp"
#include "support/example.hpp"
#include "support/oracles.hpp"

using namespace rrp;

TEST(FiniteHorizon, ExampleHorizonSix) {
  const Graph g = fixture::example();
  const auto sol = solve_finite(g, RewardSpec::uniform(4, 1.0, 0.5), 0, 6);
  EXPECT_NEAR(sol.value.value, 11.5, 1e-12);
  EXPECT_EQ(sol.witness.length(), 6u);
  EXPECT_EQ(sol.witness.front(), 0u);
  EXPECT_NEAR(r_sum_finite(RewardSpec::uniform(4, 1.0, 0.5), sol.witness).value, 11.5, 1e-12);
}

TEST(FiniteHorizon, HorizonZeroCollectsStartNode) {
  const Graph g = fixture::example();
  const auto sol = solve_finite(g, RewardSpec::uniform(4, 2.0, 0.5), 0, 0);
  EXPECT_DOUBLE_EQ(sol.value.value, 2.0);
  EXPECT_EQ(sol.witness.nodes(), std::vector<NodeId>{0});
}

TEST(FiniteHorizon, DeadEndAndGuards) {
  const Graph g(2, {{0, 1}});
  const auto spec = RewardSpec::uniform(2, 1.0, 0.5);
  EXPECT_THROW(solve_finite(g, spec, 0, 2), NoPathError);
  EXPECT_FALSE(decide_finite_value(g, spec, 0, 2, 0.0));
  EXPECT_THROW(solve_finite(g, spec, 5, 2), IndexOutOfRangeError);
  EXPECT_THROW(solve_finite(fixture::example(), RewardSpec::uniform(4, 1.0, 0.5), 0, 40,
                            {.state_budget = 50}),
               StateBudgetExceededError);
}

TEST(FiniteHorizon, MatchesEnumerationWithNodeVariantRewards) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto edges = oracle::random_edges(n, 0.45, rng);
    const auto adj = oracle::adjacency(n, edges);
    std::vector<double> lambda(n), gamma(n);
    for (std::size_t v = 0; v < n; ++v) lambda[v] = 2 * unit(rng), gamma[v] = unit(rng);
    const std::size_t N = 1 + trial % 6;
    const auto expected = oracle::best_finite(adj, lambda, gamma, 0, N);
    const Graph g(n, edges);
    if (!expected) {
      ASSERT_THROW(solve_finite(g, RewardSpec(lambda, gamma), 0, N), NoPathError);
      continue;
    }
    const auto sol = solve_finite(g, RewardSpec(lambda, gamma), 0, N);
    ASSERT_NEAR(sol.value.value, *expected, 1e-9);
    ASSERT_NEAR(oracle::path_reward(lambda, gamma, sol.witness.nodes()), *expected, 1e-9);
  }
}

TEST(FiniteHorizon, DecayProfilesMatchEnumeration) {
  // Hand-built profile vs. brute force over explicit per-Last sums.
  const Graph g = fixture::example();
  const DecayProfile table({1.0, 0.7, 0.2, 0.1}, DecayProfile::Tail::kZero);
  const std::vector<DecayProfile> profiles{table, DecayProfile::geometric(0.5), table,
                                           DecayProfile({1.0, 0.9}, DecayProfile::Tail::kGeometric, 0.3)};
  const std::vector<double> lambda{1.0, 2.0, 1.5, 0.5};
  const auto adj = oracle::adjacency(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 0}});
  for (std::size_t N = 1; N <= 7; ++N) {
    double best = -1.0;
    oracle::for_each_path(adj, 0, N, [&](const std::vector<NodeId>& p) {
      double r = 0.0;
      for (std::size_t t = 0; t < p.size(); ++t) {
        const std::size_t last = oracle::last(p, t, p[t]);
        for (std::size_t i = 0; i < last; ++i) r += lambda[p[t]] * profiles[p[t]].value(i);
      }
      best = std::max(best, r);
    });
    const auto sol = solve_finite_decay(g, lambda, profiles, 0, N);
    ASSERT_NEAR(sol.value.value, best, 1e-9) << N;
  }
}

TEST(FiniteHorizon, Decision) {
  const Graph g = fixture::example();
  const auto spec = RewardSpec::uniform(4, 1.0, 0.5);
  EXPECT_TRUE(decide_finite_value(g, spec, 0, 6, 11.5));
  EXPECT_FALSE(decide_finite_value(g, spec, 0, 6, 11.5 + 1e-6));
}
