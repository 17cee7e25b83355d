#include <gtest/gtest.h>

#include <random>

#include "rrp/errors.hpp"
#include "rrp/infinite_horizon.hpp"
#include "support/example.hpp"
#include "support/oracles.hpp"

using namespace rrp;

TEST(ComputeK, SmallestSufficientDepth) {
  EXPECT_EQ(compute_K(RewardSpec::uniform(4, 1.0, 0.5), 1e-4), 15u);
  EXPECT_EQ(compute_K(RewardSpec::uniform(4, 1.0, 0.1), 1e-4), 5u);
  // exact boundary: 0.5^3 / 0.5 = 0.25
  EXPECT_EQ(compute_K(RewardSpec::uniform(1, 1.0, 0.5), 0.25), 3u);
  EXPECT_EQ(compute_K(RewardSpec::uniform(1, 1.0, 0.5), 100.0), 1u);
  EXPECT_EQ(compute_K(RewardSpec({0.0, 1.0}, {0.99, 0.5}), 0.25), 3u);
  EXPECT_THROW(compute_K(RewardSpec::uniform(1, 1.0, 0.5), 0.0), InvalidArgumentError);
  EXPECT_THROW(compute_K(RewardSpec::uniform(1, 1.0, 1.0), 0.1), InvalidArgumentError);
  for (double gamma : {0.1, 0.3, 0.7, 0.95})
    for (double eps : {1e-2, 1e-5}) {
      const auto spec = RewardSpec::uniform(1, 2.0, gamma);
      const std::size_t K = compute_K(spec, eps);
      EXPECT_LE(2.0 * std::pow(gamma, K) / (1 - gamma), eps * (1 + 1e-12));
      if (K > 1) EXPECT_GT(2.0 * std::pow(gamma, K - 1) / (1 - gamma), eps);
    }
}

TEST(TruncatedGraph, WeightsOfAgeZero) {
  const auto spec = RewardSpec::uniform(2, 2.0, 0.5);
  const auto w0 = state_weights(spec, {0, {0, 1}}, 3);
  EXPECT_DOUBLE_EQ(w0.over_cost, 0.125);
  EXPECT_DOUBLE_EQ(w0.under_cost, 0.0);
  EXPECT_DOUBLE_EQ(w0.r_under, 2.0 * 0.875 / 0.5);
  EXPECT_DOUBLE_EQ(w0.r_over, 4.0);
  const auto w2 = state_weights(spec, {1, {0, 2}}, 3);
  EXPECT_DOUBLE_EQ(w2.over_cost, 0.25);
  EXPECT_DOUBLE_EQ(w2.under_cost, 0.25);
  EXPECT_DOUBLE_EQ(w2.r_under, w2.r_over);
}

TEST(TruncatedGraph, SelfLoopHasOneState) {
  const Graph g(1, {{0, 0}});
  const auto tg = build_truncated(g, 0, 4);
  EXPECT_EQ(tg.size(), 1u);
  EXPECT_EQ(tg.successors()[0], std::vector<std::uint32_t>{0});
}

TEST(TruncatedGraph, EdgeRule) {
  const Graph g = fixture::example();
  const auto tg = build_truncated(g, 0, 5);
  EXPECT_EQ(tg.state(0), (AugmentedState{0, {1, 1, 1, 1}}));
  // every successor state: departed node's age is 1, others increment and cap
  for (std::uint32_t s = 0; s < tg.size(); ++s)
    for (std::uint32_t t : tg.successors()[s]) {
      const auto from = tg.state(s), to = tg.state(t);
      ASSERT_TRUE(g.has_edge(from.node, to.node));
      for (NodeId u = 0; u < 4; ++u) {
        const std::uint32_t a = from.ages[u];
        const std::uint32_t expected = u == from.node ? 1 : (a == 0 || a >= 5 ? 0 : a + 1);
        ASSERT_EQ(to.ages[u], expected);
      }
    }
  EXPECT_THROW(build_truncated(g, 0, 5, 10), StateBudgetExceededError);
}

TEST(InfiniteHorizon, ExampleAtHalf) {
  const Graph g = fixture::example();
  const auto spec = RewardSpec::uniform(4, 1.0, 0.5);
  const auto b = solve_infinite_approx(g, spec, 0, 1e-4);
  EXPECT_EQ(b.K, 15u);
  EXPECT_LE(b.r_under, fixture::abcad(0.5) + 1e-12);
  EXPECT_GE(b.r_over, fixture::abcad(0.5) - 1e-12);
  EXPECT_LE(b.r_over - b.r_under, 1e-4);
  EXPECT_TRUE(oracle::same_cycle_up_to_rotation(b.pi_under.cycle(), fixture::ids(g, "abcad")));
  EXPECT_NEAR(r_av_periodic(spec, b.pi_under).value, b.r_under, 1e-9);
  EXPECT_LE(b.r_under_bound, b.r_under + 1e-12);
}

TEST(InfiniteHorizon, HowardAgreesWithKarp) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.1, 0.6);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto edges = oracle::random_edges(n, 0.5, rng);
    const Graph g(n, edges);
    std::vector<double> lambda(n), gamma(n);
    for (std::size_t v = 0; v < n; ++v) lambda[v] = 2 * unit(rng), gamma[v] = unit(rng);
    const RewardSpec spec(lambda, gamma);
    std::optional<ValueBracket> karp;
    try {
      karp = solve_truncated(g, spec, 0, 4);
    } catch (const NoPathError&) {
      continue;
    }
    const auto howard = solve_truncated(g, spec, 0, 4, {.karp_state_limit = 0});
    ASSERT_NEAR(karp->r_over, howard.r_over, 1e-9);
    ASSERT_NEAR(karp->r_under_bound, howard.r_under_bound, 1e-9);
  }
}

TEST(InfiniteHorizon, CostBracket) {
  const Graph g = fixture::example();
  const auto spec = RewardSpec::uniform(4, 1.0, 0.5);
  const auto b = solve_infinite_approx(g, spec, 0, 1e-3, {.with_cost_bracket = true});
  ASSERT_TRUE(b.cost_over && b.cost_under);
  const double c = c_av_periodic(spec, b.pi_under);
  EXPECT_LE(*b.cost_under, c + 1e-12);
  EXPECT_GE(*b.cost_over + 1e-12, *b.cost_under);
  // r = lambda (1 - c) / (1 - gamma) ties the two views together
  EXPECT_NEAR(b.r_over, (1 - *b.cost_under) / 0.5, 1e-9);
}

TEST(InfiniteHorizon, UndiscountedRoutesToExactSolver) {
  const Graph g = fixture::example();
  const auto b = solve_infinite_approx(g, RewardSpec::uniform(4, 2.0, 1.0), 0, 1e-3);
  EXPECT_DOUBLE_EQ(b.r_under, 8.0);
  EXPECT_DOUBLE_EQ(b.r_over, 8.0);
  EXPECT_THROW(solve_infinite_approx(g, RewardSpec({1, 1, 1, 1}, {1, 0.5, 1, 1}), 0, 1e-3),
               InvalidArgumentError);
}

TEST(Nondiscounted, PicksHeaviestReachableComponent) {
  // 0 -> {1 <-> 2} and 0 -> {3 self-loop}
  const Graph g(4, {{0, 1}, {1, 2}, {2, 1}, {0, 3}, {3, 3}});
  const auto heavy_pair = solve_nondiscounted(g, std::vector<double>{9, 1, 1, 1.5}, 0);
  EXPECT_DOUBLE_EQ(heavy_pair.value, 2.0);
  EXPECT_EQ(heavy_pair.witness.prefix(), std::vector<NodeId>{0});
  const auto loop = solve_nondiscounted(g, std::vector<double>{9, 1, 1, 3}, 0);
  EXPECT_DOUBLE_EQ(loop.value, 3.0);
  EXPECT_EQ(loop.witness.cycle(), std::vector<NodeId>{3});
}

TEST(Decision, YesAndNo) {
  const Graph g = fixture::example();
  const auto spec = RewardSpec::uniform(4, 1.0, 0.5);
  EXPECT_EQ(decide_infinite_value(g, spec, 0, 1.8, 1e-3).decision, Decision::kYes);
  EXPECT_EQ(decide_infinite_value(g, spec, 0, 1.9, 1e-3).decision, Decision::kNo);
}
