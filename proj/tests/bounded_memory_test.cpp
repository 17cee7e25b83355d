#include <gtest/gtest.h>

#include <map>
#include <random>

#include "rrp/bounded_memory.hpp"
#include "rrp/errors.hpp"
#include "support/example.hpp"
#include "support/oracles.hpp"

using namespace rrp;

namespace {

// Best value over every (update table, choice table) pair with memory size B,
// by direct simulation of the closed-loop run.
double brute_force_memory(const oracle::Adj& adj, const std::vector<double>& lambda,
                          const std::vector<double>& gamma, std::size_t B) {
  const std::size_t n = adj.size();
  const std::size_t cells = n * B;
  std::vector<std::size_t> update(cells, 0), pick(cells, 0);
  double best = -1.0;
  auto advance = [](std::vector<std::size_t>& digits, auto radix) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < radix(i)) return true;
      digits[i] = 0;
    }
    return false;
  };
  do {
    do {
      std::map<std::pair<NodeId, std::size_t>, std::size_t> seen;
      std::vector<NodeId> run;
      NodeId v = 0;
      std::size_t m = 0;
      while (!seen.count({v, m})) {
        seen[{v, m}] = run.size();
        run.push_back(v);
        const NodeId next = adj[v][pick[v * B + m]];
        m = update[m * n + v];
        v = next;
      }
      const std::vector<NodeId> cycle(run.begin() + seen[{v, m}], run.end());
      best = std::max(best, oracle::periodic_reward(lambda, gamma, cycle));
    } while (advance(pick, [&](std::size_t i) { return adj[i / B].size(); }));
  } while (advance(update, [&](std::size_t) { return B; }));
  return best;
}

}  // namespace

TEST(BoundedMemory, MemorylessOnExample) {
  const Graph g = fixture::example();
  const auto spec = RewardSpec::uniform(4, 1.0, 0.5);
  const auto sol = solve_bounded_memory(g, spec, 0, 1);
  // without memory the robot at a always goes the same way
  EXPECT_NEAR(sol.value, fixture::abc(0.5), 1e-12);
  EXPECT_EQ(sol.strategy.memory.size, 1u);
}

TEST(BoundedMemory, MatchesBruteForceOverStrategies) {
  const Graph g = fixture::example();
  const auto adj = oracle::adjacency(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 0}});
  for (double gamma : {0.26, 0.5, 0.9}) {
    const std::vector<double> lambda(4, 1.0), gam(4, gamma);
    const auto sol = solve_bounded_memory(g, RewardSpec(lambda, gam), 0, 2);
    EXPECT_NEAR(sol.value, brute_force_memory(adj, lambda, gam, 2), 1e-9) << gamma;
  }
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.1, 0.9);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const auto edges = oracle::random_hamiltonian(n, 0.5, rng);
    const auto radj = oracle::adjacency(n, edges);
    std::vector<double> lambda(n), gam(n);
    for (std::size_t v = 0; v < n; ++v) lambda[v] = 2 * unit(rng), gam[v] = unit(rng);
    const auto sol = solve_bounded_memory(Graph(n, edges), RewardSpec(lambda, gam), 0, 2);
    ASSERT_NEAR(sol.value, brute_force_memory(radj, lambda, gam, 2), 1e-9);
  }
}

TEST(BoundedMemory, StrategyReproducesWitness) {
  const Graph g = fixture::example();
  const auto spec = RewardSpec::uniform(4, 1.0, 0.26);
  const auto sol = solve_bounded_memory(g, spec, 0, 3);
  validate_strategy(g, sol.strategy);
  const Path run = outcome(g, sol.strategy, 60);
  EXPECT_EQ(run.nodes(), sol.witness.unroll(60));
  EXPECT_NEAR(r_av_periodic(spec, sol.witness).value, sol.value, 1e-12);
  EXPECT_NEAR(sol.value, fixture::abcabcad(0.26), 1e-12);
}

TEST(BoundedMemory, Guards) {
  const Graph g = fixture::example();
  const auto spec = RewardSpec::uniform(4, 1.0, 0.5);
  EXPECT_THROW(solve_bounded_memory(g, spec, 0, 4), InstanceTooLargeError);
  EXPECT_THROW(solve_bounded_memory(Graph(5, {{0, 0}}), RewardSpec::uniform(5, 1, 0.5), 0, 1),
               InstanceTooLargeError);

  FiniteStrategy bad{MemoryStructure::memoryless(4), {2, 2, 0, 0}, 0};
  EXPECT_THROW(validate_strategy(g, bad), ChoiceNotEdgeError);
}

TEST(BoundedMemory, ProductGraph) {
  const Graph g = fixture::example();
  const auto product = make_product(g, 3);
  EXPECT_EQ(product.node_count(), 12u);
  EXPECT_EQ(product.node(product.id(2, 1)), 2u);
  EXPECT_EQ(product.memory(product.id(2, 1)), 1u);
  EXPECT_TRUE(product.has_edge(product.id(0, 0), product.id(3, 2)));
  EXPECT_FALSE(product.has_edge(product.id(1, 0), product.id(3, 0)));
}

TEST(BoundedMemory, ErrorBound) {
  const auto spec = RewardSpec::uniform(4, 1.0, 0.5);
  EXPECT_DOUBLE_EQ(memory_error_bound(spec, 4, 16), 1.0);
  EXPECT_DOUBLE_EQ(memory_error_bound(spec, 4, 15), 2.0);
  EXPECT_DOUBLE_EQ(memory_error_bound(spec, 4, 64), 0.5);
  EXPECT_THROW(memory_error_bound(spec, 4, 1), InvalidArgumentError);
}
