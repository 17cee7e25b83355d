#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rrp/graph.hpp"
#include "rrp/reward.hpp"

namespace rrp {

using MemoryState = std::uint32_t;

// Finite memory (M, m0, delta) with M = [0, size). update is indexed
// [m * node_count + v] and gives delta(m, v).
struct MemoryStructure {
  std::size_t size = 1;
  MemoryState initial = 0;
  std::size_t node_count = 0;
  std::vector<MemoryState> update;

  MemoryState next(MemoryState m, NodeId v) const { return update.at(m * node_count + v); }
  static MemoryStructure memoryless(std::size_t node_count);
};

// Strategy with memory: from node v with memory m (the memory after reading the
// path before v) move to choice(v, m); the memory becomes delta(m, v).
struct FiniteStrategy {
  MemoryStructure memory;
  // indexed [v * memory.size + m]
  std::vector<NodeId> choice;
  NodeId start = 0;

  NodeId move(NodeId v, MemoryState m) const { return choice.at(v * memory.size + m); }
};

// Throws ChoiceNotEdgeError when some choice(v, m) is not a successor of v,
// InvalidArgumentError for malformed tables.
void validate_strategy(const Graph& g, const FiniteStrategy& sigma);

// First `steps` steps of the strategy's outcome.
Path outcome(const Graph& g, const FiniteStrategy& sigma, std::size_t steps);

// Product graph G x B: node (v, i) has id v * B + i; edges ((v,i),(v',j)) for
// every (v,v') in E and all i, j.
struct ProductGraph {
  const Graph* base = nullptr;
  std::size_t bound = 1;

  std::size_t node_count() const { return base->node_count() * bound; }
  std::uint32_t id(NodeId v, MemoryState i) const { return static_cast<std::uint32_t>(v * bound + i); }
  NodeId node(std::uint32_t id) const { return static_cast<NodeId>(id / bound); }
  MemoryState memory(std::uint32_t id) const { return static_cast<MemoryState>(id % bound); }
  bool has_edge(std::uint32_t from, std::uint32_t to) const {
    return base->has_edge(node(from), node(to));
  }
};

ProductGraph make_product(const Graph& g, std::size_t bound);

// Follows a memoryless product strategy (`choice[id]` is the successor product
// node) from `start` until a product node repeats; returns the projected lasso.
UltimatelyPeriodicPath lasso_of_memoryless(const ProductGraph& product,
                                           const std::vector<std::uint32_t>& choice,
                                           std::uint32_t start);

// Converts a memoryless product strategy into a strategy with memory of size B.
FiniteStrategy strategy_from_product(const ProductGraph& product,
                                     const std::vector<std::uint32_t>& choice, NodeId v0);

struct BoundedMemoryLimits {
  std::size_t max_nodes = 4;
  std::size_t max_memory = 3;
};

struct BoundedMemorySolution {
  double value = 0.0;
  FiniteStrategy strategy;
  UltimatelyPeriodicPath witness;
  std::size_t lassos_examined = 0;
};

// Best limit-average reward over strategies with memory of size B, by
// enumerating memoryless strategies of G x B on the part reachable from (v0, m0).
BoundedMemorySolution solve_bounded_memory(const Graph& g, const RewardSpec& spec, NodeId v0,
                                           std::size_t bound, BoundedMemoryLimits limits = {});

// lambda/(1-gamma) * gamma^(floor(ln B / ln |V|) - 1).
double memory_error_bound(const RewardSpec& spec, std::size_t node_count, std::size_t bound);

}  // namespace rrp
