#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rrp/finite_horizon.hpp"
#include "rrp/graph.hpp"
#include "rrp/mean_cycle.hpp"
#include "rrp/reward.hpp"

namespace rrp {

// Smallest K >= 1 with lambda(v) gamma(v)^K / (1 - gamma(v)) <= epsilon at every
// node. Requires epsilon > 0 and gamma(v) < 1 everywhere.
std::size_t compute_K(const RewardSpec& spec, double epsilon);

// Weights of a truncated state (v, ages) where a = ages[v] and 0 means "more
// than K steps ago or never".
struct WeightPair {
  double over_cost = 0.0;   // gamma^a, or gamma^K when a == 0
  double under_cost = 0.0;  // gamma^a, or 0 when a == 0
  double r_under = 0.0;     // reward dual of over_cost
  double r_over = 0.0;      // reward dual of under_cost
};

WeightPair state_weights(const RewardSpec& spec, const AugmentedState& state, std::size_t K);

// Reachable part of the truncated augmented graph from (v0, 1, ..., 1).
class TruncatedGraph {
 public:
  std::size_t K() const { return K_; }
  std::size_t size() const { return successors_.size(); }
  std::size_t node_count() const { return stride_ - 1; }
  AugmentedState state(std::uint32_t id) const;
  NodeId node(std::uint32_t id) const { return keys_[id * stride_]; }
  std::uint32_t age(std::uint32_t id, NodeId u) const { return keys_[id * stride_ + 1 + u]; }
  const Adjacency& successors() const { return successors_; }
  std::optional<std::uint32_t> find(const AugmentedState& state) const;
  // Lexicographic order on (node, ages).
  bool key_less(std::uint32_t a, std::uint32_t b) const;
  // States from the initial state (id 0) to `target` along BFS tree edges.
  std::vector<std::uint32_t> reach_path(std::uint32_t target) const;

 private:
  friend TruncatedGraph build_truncated(const Graph& g, NodeId v0, std::size_t K,
                                        std::size_t state_budget);
  std::size_t K_ = 0;
  std::size_t stride_ = 1;
  std::vector<std::uint32_t> keys_;
  Adjacency successors_;
  std::vector<std::uint32_t> bfs_parent_;
};

// Throws StateBudgetExceededError when more than `state_budget` states are reachable.
TruncatedGraph build_truncated(const Graph& g, NodeId v0, std::size_t K,
                               std::size_t state_budget = 5'000'000);

struct InfiniteOptions {
  std::size_t state_budget = 5'000'000;
  // Components up to this many states use Karp; larger ones use policy iteration.
  std::size_t karp_state_limit = 2000;
  // Also compute the cost-space interval [C_under, C_over] (node-invariant specs).
  bool with_cost_bracket = false;
};

struct ValueBracket {
  // True limit-average reward of pi_under; a certified lower bound on the optimum.
  double r_under = 0.0;
  // Optimal cycle mean under the r_over weights; an upper bound on the optimum.
  double r_over = 0.0;
  // Optimal cycle mean under the r_under weights (r_under >= this).
  double r_under_bound = 0.0;
  UltimatelyPeriodicPath pi_under;
  UltimatelyPeriodicPath pi_over;
  std::size_t K = 0;
  double epsilon_achieved = 0.0;
  std::size_t states = 0;
  // Minimum cycle means of over_cost and under_cost, when requested.
  std::optional<double> cost_over;
  std::optional<double> cost_under;
};

ValueBracket solve_infinite_approx(const Graph& g, const RewardSpec& spec, NodeId v0,
                                   double epsilon, InfiniteOptions options = {});
// The bracket for a fixed truncation depth.
ValueBracket solve_truncated(const Graph& g, const RewardSpec& spec, NodeId v0, std::size_t K,
                             InfiniteOptions options = {});

struct NondiscountedSolution {
  double value = 0.0;
  UltimatelyPeriodicPath witness;
};

// Exact optimum when every gamma is 1: the best reachable cyclic SCC by total
// lambda, toured by its covering cycle.
NondiscountedSolution solve_nondiscounted(const Graph& g, std::span<const double> lambda, NodeId v0);

enum class Decision { kYes, kNo, kUnknown };

struct DecisionResult {
  Decision decision;
  ValueBracket bracket;
};

DecisionResult decide_infinite_value(const Graph& g, const RewardSpec& spec, NodeId v0,
                                     double threshold, double epsilon,
                                     InfiniteOptions options = {});

}  // namespace rrp
