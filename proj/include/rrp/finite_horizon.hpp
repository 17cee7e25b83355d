#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rrp/graph.hpp"
#include "rrp/reward.hpp"

namespace rrp {

// Node of the augmented graph: the current node plus, for every node u, the
// time since u was last visited (t+1 if never).
struct AugmentedState {
  NodeId node = 0;
  std::vector<std::uint32_t> ages;

  auto operator<=>(const AugmentedState&) const = default;
};

struct FiniteOptions {
  // Total augmented states stored across all layers.
  std::size_t state_budget = 5'000'000;
  std::size_t max_horizon = 1'000'000;
};

struct FiniteSolution {
  RewardValue value;
  Path witness;
  std::size_t states = 0;
};

// Optimal N-step reward from v0 and a path achieving it, by layered dynamic
// programming over reachable augmented states.
FiniteSolution solve_finite(const Graph& g, const RewardSpec& spec, NodeId v0, std::size_t horizon,
                            FiniteOptions options = {});

// Same, with per-node decay profiles in place of multiplicative discounting.
FiniteSolution solve_finite_decay(const Graph& g, std::span<const double> lambda,
                                  std::span<const DecayProfile> profiles, NodeId v0,
                                  std::size_t horizon, FiniteOptions options = {});

bool decide_finite_value(const Graph& g, const RewardSpec& spec, NodeId v0, std::size_t horizon,
                         double threshold, FiniteOptions options = {});

}  // namespace rrp
