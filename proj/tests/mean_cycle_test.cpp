#include <gtest/gtest.h>

#include <random>

#include "rrp/errors.hpp"
#include "rrp/mean_cycle.hpp"
#include "support/oracles.hpp"

using namespace rrp;

namespace {

bool is_cycle(const Adjacency& adj, const std::vector<std::uint32_t>& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& s = adj[c[i]];
    if (!std::binary_search(s.begin(), s.end(), c[(i + 1) % c.size()])) return false;
  }
  return !c.empty();
}

}  // namespace

TEST(MeanCycle, SmallExample) {
  // 0 <-> 1 (weights 1, 3) and 1 <-> 2 (weight 8)
  const Adjacency adj{{1}, {0, 2}, {1}};
  const std::vector<double> w{1, 3, 8};
  const auto best = karp_mean_cycle(adj, w, CycleMode::kMax);
  EXPECT_DOUBLE_EQ(best.mean, 5.5);
  EXPECT_EQ(best.cycle, (std::vector<std::uint32_t>{1, 2}));
  const auto worst = karp_mean_cycle(adj, w, CycleMode::kMin);
  EXPECT_DOUBLE_EQ(worst.mean, 2.0);
  EXPECT_EQ(worst.cycle, (std::vector<std::uint32_t>{0, 1}));
}

TEST(MeanCycle, SelfLoopSingleton) {
  const Adjacency adj{{0}};
  const std::vector<double> w{4.5};
  EXPECT_DOUBLE_EQ(karp_mean_cycle(adj, w, CycleMode::kMax).mean, 4.5);
  EXPECT_DOUBLE_EQ(howard_mean_cycle(adj, w, CycleMode::kMin).mean, 4.5);
}

TEST(MeanCycle, RejectsNonStronglyConnected) {
  const Adjacency adj{{1}, {}};
  const std::vector<double> w{1, 1};
  EXPECT_THROW(karp_mean_cycle(adj, w, CycleMode::kMax), NotStronglyConnectedError);
  EXPECT_THROW(howard_mean_cycle(adj, w, CycleMode::kMax), NotStronglyConnectedError);
}

TEST(MeanCycle, KarpAndHowardMatchEnumeration) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> weight(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto edges = oracle::random_hamiltonian(n, 0.3, rng);
    const auto adj = oracle::adjacency(n, edges);
    std::vector<double> w(n);
    for (auto& x : w) x = weight(rng);
    for (auto mode : {CycleMode::kMax, CycleMode::kMin}) {
      const double expected = oracle::best_cycle_mean(adj, w, mode == CycleMode::kMax);
      const auto k = karp_mean_cycle(adj, w, mode);
      const auto h = howard_mean_cycle(adj, w, mode);
      ASSERT_NEAR(k.mean, expected, 1e-9);
      ASSERT_NEAR(h.mean, expected, 1e-9);
      ASSERT_TRUE(is_cycle(adj, k.cycle));
      ASSERT_TRUE(is_cycle(adj, h.cycle));
      ASSERT_NEAR(cycle_mean(k.cycle, w), k.mean, 1e-9);
      ASSERT_NEAR(cycle_mean(h.cycle, w), h.mean, 1e-9);
    }
  }
}

TEST(MeanCycle, HowardOnLargeRing) {
  // 5000-node ring with chords; the best cycle is the short chord loop.
  const std::size_t n = 5000;
  Adjacency adj(n);
  for (std::uint32_t v = 0; v < n; ++v) adj[v].push_back((v + 1) % n);
  adj[10].insert(adj[10].begin(), 7);
  std::vector<double> w(n, 0.0);
  for (std::uint32_t v = 7; v <= 10; ++v) w[v] = 1.0;
  const auto h = howard_mean_cycle(adj, w, CycleMode::kMax);
  EXPECT_DOUBLE_EQ(h.mean, 1.0);
  EXPECT_EQ(h.cycle, (std::vector<std::uint32_t>{7, 8, 9, 10}));
}
