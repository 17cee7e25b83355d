#include "rrp/graph.hpp"

#include <algorithm>
#include <deque>

namespace rrp {

Graph::Graph(std::size_t node_count, std::vector<std::pair<NodeId, NodeId>> edges,
             std::vector<std::string> labels)
    : successors_(node_count), labels_(std::move(labels)) {
  if (node_count == 0) throw InvalidArgumentError("graph needs at least one node");
  if (!labels_.empty() && labels_.size() != node_count)
    throw InvalidArgumentError("label count does not match node count");
  for (auto [from, to] : edges) {
    if (from >= node_count || to >= node_count)
      throw IndexOutOfRangeError("edge endpoint out of range");
    successors_[from].push_back(to);
  }
  for (auto& succ : successors_) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (const auto& succ : successors_) total += succ.size();
  return total;
}

bool Graph::has_edge(NodeId from, NodeId to) const {
  if (from >= node_count()) return false;
  const auto& succ = successors_[from];
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::string Graph::label(NodeId v) const {
  if (v < labels_.size()) return labels_[v];
  return std::to_string(v);
}

std::optional<NodeId> Graph::find_label(const std::string& name) const {
  for (std::size_t v = 0; v < labels_.size(); ++v)
    if (labels_[v] == name) return static_cast<NodeId>(v);
  return std::nullopt;
}

Path validate_path(const Graph& g, std::vector<NodeId> nodes) {
  if (nodes.empty()) throw EmptyPathError();
  for (NodeId v : nodes)
    if (v >= g.node_count()) throw IndexOutOfRangeError("path node out of range");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!g.has_edge(nodes[i], nodes[i + 1])) throw BadEdgeError(i);
  return Path(std::move(nodes));
}

UltimatelyPeriodicPath make_lasso(const Graph& g, std::vector<NodeId> prefix,
                                  std::vector<NodeId> cycle) {
  if (cycle.empty()) throw EmptyPathError();
  std::vector<NodeId> joined = prefix;
  joined.insert(joined.end(), cycle.begin(), cycle.end());
  joined.push_back(cycle.front());
  validate_path(g, std::move(joined));
  return UltimatelyPeriodicPath(std::move(prefix), std::move(cycle));
}

NodeId UltimatelyPeriodicPath::at(std::size_t t) const {
  if (t < prefix_.size()) return prefix_[t];
  return cycle_[(t - prefix_.size()) % cycle_.size()];
}

std::vector<NodeId> UltimatelyPeriodicPath::unroll(std::size_t steps) const {
  std::vector<NodeId> out;
  out.reserve(steps + 1);
  for (std::size_t t = 0; t <= steps; ++t) out.push_back(at(t));
  return out;
}

std::size_t last_visit(std::span<const NodeId> path, std::size_t t, NodeId v) {
  if (t >= path.size()) throw IndexOutOfRangeError("time index beyond path end");
  for (std::size_t j = t; j-- > 0;)
    if (path[j] == v) return t - j;
  return t + 1;
}

std::vector<std::size_t> last_visit_profile(std::span<const NodeId> path) {
  std::vector<std::size_t> out(path.size());
  // previous occurrence time + 1, 0 meaning "not seen"
  std::vector<std::size_t> seen;
  for (std::size_t t = 0; t < path.size(); ++t) {
    NodeId v = path[t];
    if (v >= seen.size()) seen.resize(v + 1, 0);
    out[t] = seen[v] == 0 ? t + 1 : t - (seen[v] - 1);
    seen[v] = t + 1;
  }
  return out;
}

SccDecomposition scc_decompose(const std::vector<std::vector<std::uint32_t>>& adjacency) {
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  const std::size_t n = adjacency.size();
  SccDecomposition out;
  out.component.assign(n, kUnvisited);

  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  // (node, next successor position)
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  std::uint32_t counter = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto& succ = adjacency[v];
      if (pos < succ.size()) {
        std::uint32_t w = succ[pos++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] != index[done]) continue;
      std::vector<std::uint32_t> members;
      std::uint32_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        out.component[w] = static_cast<std::uint32_t>(out.components.size());
        members.push_back(w);
      } while (w != done);
      std::sort(members.begin(), members.end());
      out.components.push_back(std::move(members));
    }
  }

  const std::size_t c = out.components.size();
  out.condensation.assign(c, {});
  out.cyclic.assign(c, false);
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t cv = out.component[v];
    for (std::uint32_t w : adjacency[v]) {
      std::uint32_t cw = out.component[w];
      if (cv == cw)
        out.cyclic[cv] = true;
      else
        out.condensation[cv].push_back(cw);
    }
  }
  for (auto& succ : out.condensation) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  return out;
}

std::vector<bool> reachable_from(const Graph& g, NodeId from) {
  std::vector<bool> seen(g.node_count(), false);
  std::vector<NodeId> todo{from};
  seen.at(from) = true;
  while (!todo.empty()) {
    NodeId v = todo.back();
    todo.pop_back();
    for (NodeId w : g.successors(v))
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
  }
  return seen;
}

std::optional<std::vector<NodeId>> shortest_path(const Graph& g, NodeId from, NodeId to,
                                                 const std::vector<bool>* allowed) {
  constexpr NodeId kNone = UINT32_MAX;
  std::vector<NodeId> parent(g.node_count(), kNone);
  std::vector<bool> seen(g.node_count(), false);
  std::deque<NodeId> queue{from};
  seen.at(from) = true;
  while (!queue.empty() && !seen.at(to)) {
    NodeId v = queue.front();
    queue.pop_front();
    for (NodeId w : g.successors(v)) {
      if (seen[w] || (allowed && !(*allowed)[w])) continue;
      seen[w] = true;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  if (!seen[to]) return std::nullopt;
  std::vector<NodeId> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

WeightedScc max_reachable_scc(const Graph& g, NodeId v0, std::span<const double> weight) {
  if (weight.size() != g.node_count()) throw InvalidArgumentError("weight size mismatch");
  for (double w : weight)
    if (w < 0) throw InvalidArgumentError("weights must be nonnegative");
  const auto reach = reachable_from(g, v0);
  const auto scc = scc_decompose(g);
  std::optional<WeightedScc> best;
  std::optional<NodeId> best_min;
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    const auto& members = scc.components[c];
    if (!scc.cyclic[c] || !reach[members.front()]) continue;
    double total = 0.0;
    for (NodeId v : members) total += weight[v];
    bool better = !best || total > best->total_weight ||
                  (total == best->total_weight && members.front() < *best_min);
    if (better) {
      best = WeightedScc{members, total};
      best_min = members.front();
    }
  }
  if (!best) throw NoPathError("no cycle is reachable from the start node");
  return *best;
}

Path covering_cycle(const Graph& g, std::span<const NodeId> scc) {
  if (scc.empty()) throw InvalidArgumentError("empty node set");
  std::vector<NodeId> members(scc.begin(), scc.end());
  std::sort(members.begin(), members.end());
  std::vector<bool> allowed(g.node_count(), false);
  for (NodeId v : members) allowed.at(v) = true;

  if (members.size() == 1) {
    if (!g.has_edge(members[0], members[0]))
      throw NotStronglyConnectedError("singleton without self-loop");
    return validate_path(g, {members[0], members[0]});
  }
  std::vector<NodeId> walk{members.front()};
  for (std::size_t i = 0; i < members.size(); ++i) {
    NodeId target = members[(i + 1) % members.size()];
    auto leg = shortest_path(g, walk.back(), target, &allowed);
    if (!leg) throw NotStronglyConnectedError("node set is not strongly connected");
    walk.insert(walk.end(), leg->begin() + 1, leg->end());
  }
  return validate_path(g, std::move(walk));
}

namespace {

void check_limit(const Graph& g, SearchLimits limits, const char* what) {
  if (g.node_count() > limits.max_nodes)
    throw InstanceTooLargeError(what, g.node_count(), limits.max_nodes);
}

// Depth-first extension of `stack` over nodes >= stack.front(); records the
// longest closing cycle. Stops early once `target` nodes are covered.
void extend_cycle(const Graph& g, std::vector<NodeId>& stack, std::vector<bool>& used,
                  std::vector<NodeId>& best, std::size_t target) {
  NodeId start = stack.front();
  NodeId v = stack.back();
  for (NodeId w : g.successors(v)) {
    if (best.size() == target + 1) return;
    if (w == start) {
      if (stack.size() + 1 > best.size()) {
        best = stack;
        best.push_back(start);
      }
    } else if (w > start && !used[w]) {
      used[w] = true;
      stack.push_back(w);
      extend_cycle(g, stack, used, best, target);
      stack.pop_back();
      used[w] = false;
    }
  }
}

}  // namespace

std::optional<Path> hamiltonian_cycle(const Graph& g, SearchLimits limits) {
  check_limit(g, limits, "hamiltonian_cycle");
  const std::size_t n = g.node_count();
  std::vector<NodeId> stack{0}, best;
  std::vector<bool> used(n, false);
  used[0] = true;
  extend_cycle(g, stack, used, best, n);
  if (best.size() != n + 1) return std::nullopt;
  return validate_path(g, std::move(best));
}

Path longest_simple_cycle(const Graph& g, SearchLimits limits) {
  check_limit(g, limits, "longest_simple_cycle");
  const std::size_t n = g.node_count();
  std::vector<NodeId> best;
  for (NodeId s = 0; s < n; ++s) {
    // a cycle whose smallest member is s has at most n - s nodes
    if (!best.empty() && best.size() - 1 >= n - s) break;
    std::vector<NodeId> stack{s}, found = best;
    std::vector<bool> used(n, false);
    used[s] = true;
    extend_cycle(g, stack, used, found, n - s);
    if (found.size() > best.size()) best = std::move(found);
  }
  if (best.empty()) throw NoPathError("graph has no cycle");
  return validate_path(g, std::move(best));
}

}  // namespace rrp
