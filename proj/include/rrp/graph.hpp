#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rrp/errors.hpp"

namespace rrp {

using NodeId = std::uint32_t;

// Finite directed graph over the dense node set [0, node_count).
// Successor lists are sorted ascending and deduplicated, so every traversal
// below visits successors in increasing id order.
class Graph {
 public:
  explicit Graph(std::size_t node_count, std::vector<std::pair<NodeId, NodeId>> edges = {},
                 std::vector<std::string> labels = {});

  std::size_t node_count() const { return successors_.size(); }
  std::size_t edge_count() const;
  std::span<const NodeId> successors(NodeId v) const { return successors_.at(v); }
  bool has_edge(NodeId from, NodeId to) const;
  const std::vector<std::vector<NodeId>>& adjacency() const { return successors_; }

  // Display name; falls back to the numeric id when no labels were given.
  std::string label(NodeId v) const;
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<NodeId> find_label(const std::string& name) const;

 private:
  std::vector<std::vector<NodeId>> successors_;
  std::vector<std::string> labels_;
};

// A non-empty node sequence whose consecutive pairs are edges.
// Length is the number of edges.
class Path {
 public:
  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::size_t length() const { return nodes_.size() - 1; }
  NodeId operator[](std::size_t t) const { return nodes_[t]; }
  NodeId front() const { return nodes_.front(); }
  NodeId back() const { return nodes_.back(); }
  bool operator==(const Path&) const = default;

 private:
  friend Path validate_path(const Graph& g, std::vector<NodeId> nodes);
  explicit Path(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {}
  std::vector<NodeId> nodes_;
};

// Throws EmptyPathError, BadEdgeError(i) for the first step i that is not an edge,
// or IndexOutOfRangeError for an unknown node.
Path validate_path(const Graph& g, std::vector<NodeId> nodes);

// The infinite path prefix . cycle . cycle . ...
// `cycle` is one period (non-empty); its last node has an edge back to its first.
// `prefix` may be empty, in which case the path starts at cycle.front().
class UltimatelyPeriodicPath {
 public:
  const std::vector<NodeId>& prefix() const { return prefix_; }
  const std::vector<NodeId>& cycle() const { return cycle_; }
  std::size_t period() const { return cycle_.size(); }
  NodeId start() const { return prefix_.empty() ? cycle_.front() : prefix_.front(); }

  // Node at time t of the infinite path.
  NodeId at(std::size_t t) const;
  // The first steps+1 nodes, i.e. a finite path of length `steps`.
  std::vector<NodeId> unroll(std::size_t steps) const;

  bool operator==(const UltimatelyPeriodicPath&) const = default;

 private:
  friend UltimatelyPeriodicPath make_lasso(const Graph& g, std::vector<NodeId> prefix,
                                           std::vector<NodeId> cycle);
  UltimatelyPeriodicPath(std::vector<NodeId> prefix, std::vector<NodeId> cycle)
      : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {}
  std::vector<NodeId> prefix_;
  std::vector<NodeId> cycle_;
};

UltimatelyPeriodicPath make_lasso(const Graph& g, std::vector<NodeId> prefix,
                                  std::vector<NodeId> cycle);

// Steps since the previous occurrence of v strictly before t, or t+1 if none.
std::size_t last_visit(std::span<const NodeId> path, std::size_t t, NodeId v);
inline std::size_t last_visit(const Path& p, std::size_t t, NodeId v) {
  return last_visit(std::span<const NodeId>(p.nodes()), t, v);
}

// Last-visit value at every position t of the path for its own node p[t].
std::vector<std::size_t> last_visit_profile(std::span<const NodeId> path);

struct SccDecomposition {
  // component[v] is the index of v's component in `components`.
  std::vector<std::uint32_t> component;
  // Members sorted ascending. Components are in reverse topological order
  // of the condensation (sinks first).
  std::vector<std::vector<std::uint32_t>> components;
  // Condensation DAG: sorted, deduplicated successor components.
  std::vector<std::vector<std::uint32_t>> condensation;
  // True when the component contains a cycle (size > 1 or a self-loop).
  std::vector<bool> cyclic;
};

// Iterative Tarjan; works on any adjacency list over dense ids.
SccDecomposition scc_decompose(const std::vector<std::vector<std::uint32_t>>& adjacency);
inline SccDecomposition scc_decompose(const Graph& g) { return scc_decompose(g.adjacency()); }

// Nodes reachable from `from` (including it), as a membership mask.
std::vector<bool> reachable_from(const Graph& g, NodeId from);

// BFS shortest path from `from` to `to`, restricted to nodes with allowed[v]
// when a mask is given. Returns nullopt when unreachable.
std::optional<std::vector<NodeId>> shortest_path(const Graph& g, NodeId from, NodeId to,
                                                 const std::vector<bool>* allowed = nullptr);

struct WeightedScc {
  std::vector<NodeId> nodes;
  double total_weight = 0.0;
};

// Among cyclic SCCs reachable from v0 (those an infinite path can stay in),
// the one with the largest total weight; ties go to the smallest member id.
// Throws NoPathError when no cyclic SCC is reachable.
WeightedScc max_reachable_scc(const Graph& g, NodeId v0, std::span<const double> weight);

// Closed walk through every node of `scc`: members in ascending id order joined
// by BFS shortest paths inside the SCC, then back to the first member.
Path covering_cycle(const Graph& g, std::span<const NodeId> scc);

struct SearchLimits {
  std::size_t max_nodes = 15;
};

// Closed simple cycle through all nodes (first node repeated at the end).
std::optional<Path> hamiltonian_cycle(const Graph& g, SearchLimits limits = {});
// A maximum-length simple cycle, closed. Throws NoPathError if g is acyclic.
Path longest_simple_cycle(const Graph& g, SearchLimits limits = {});

}  // namespace rrp
