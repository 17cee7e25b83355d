#include "rrp/bounded_memory.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace rrp {
namespace {

constexpr NodeId kUndefined = UINT32_MAX;

// Depth-first enumeration of the lassos reachable under memoryless product
// strategies. Memory labels are introduced in order of first use, which
// enumerates every strategy up to renaming of memory states.
class LassoSearch {
 public:
  LassoSearch(const ProductGraph& product, const RewardSpec& spec)
      : product_(product), spec_(spec), choice_(product.node_count(), UINT32_MAX),
        position_(product.node_count(), SIZE_MAX) {}

  void run(std::uint32_t start) {
    visit(start, 0);
  }

  std::size_t examined = 0;
  std::optional<double> best_value;
  std::vector<std::uint32_t> best_choice;
  std::optional<UltimatelyPeriodicPath> best_lasso;

 private:
  void visit(std::uint32_t current, MemoryState max_label) {
    position_[current] = trail_.size();
    trail_.push_back(current);
    const NodeId v = product_.node(current);
    const MemoryState label_limit =
        static_cast<MemoryState>(std::min<std::size_t>(product_.bound - 1, max_label + 1));
    for (NodeId w : product_.base->successors(v)) {
      for (MemoryState j = 0; j <= label_limit; ++j) {
        const std::uint32_t next = product_.id(w, j);
        choice_[current] = next;
        if (position_[next] != SIZE_MAX)
          close(position_[next]);
        else
          visit(next, std::max(max_label, j));
      }
    }
    choice_[current] = UINT32_MAX;
    position_[current] = SIZE_MAX;
    trail_.pop_back();
  }

  void close(std::size_t loop_start) {
    ++examined;
    std::vector<NodeId> prefix, cycle;
    for (std::size_t i = 0; i < loop_start; ++i) prefix.push_back(product_.node(trail_[i]));
    for (std::size_t i = loop_start; i < trail_.size(); ++i) cycle.push_back(product_.node(trail_[i]));
    auto lasso = make_lasso(*product_.base, std::move(prefix), std::move(cycle));
    const double value = r_av_periodic(spec_, lasso).value;
    if (best_value && value <= *best_value + 1e-12 * std::max(1.0, std::abs(*best_value))) return;
    best_value = value;
    best_choice = choice_;
    best_lasso = std::move(lasso);
  }

  const ProductGraph& product_;
  const RewardSpec& spec_;
  std::vector<std::uint32_t> choice_;
  std::vector<std::size_t> position_;
  std::vector<std::uint32_t> trail_;
};

}  // namespace

MemoryStructure MemoryStructure::memoryless(std::size_t node_count) {
  return MemoryStructure{1, 0, node_count, std::vector<MemoryState>(node_count, 0)};
}

void validate_strategy(const Graph& g, const FiniteStrategy& sigma) {
  const auto& mem = sigma.memory;
  if (mem.node_count != g.node_count() || mem.size == 0 || mem.initial >= mem.size ||
      mem.update.size() != mem.size * mem.node_count)
    throw InvalidArgumentError("malformed memory structure");
  for (MemoryState m : mem.update)
    if (m >= mem.size) throw InvalidArgumentError("memory update leaves the memory set");
  if (sigma.choice.size() != g.node_count() * mem.size || sigma.start >= g.node_count())
    throw InvalidArgumentError("malformed strategy choice table");
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (MemoryState m = 0; m < mem.size; ++m) {
      const NodeId to = sigma.move(v, m);
      if (to == kUndefined && g.successors(v).empty()) continue;
      if (!g.has_edge(v, to))
        throw ChoiceNotEdgeError("strategy moves from " + g.label(v) + " along a non-edge");
    }
}

Path outcome(const Graph& g, const FiniteStrategy& sigma, std::size_t steps) {
  validate_strategy(g, sigma);
  std::vector<NodeId> nodes{sigma.start};
  NodeId v = sigma.start;
  MemoryState m = sigma.memory.initial;
  for (std::size_t s = 0; s < steps; ++s) {
    const NodeId next = sigma.move(v, m);
    if (next == kUndefined) throw NoPathError("strategy reaches a node without successors");
    m = sigma.memory.next(m, v);
    v = next;
    nodes.push_back(v);
  }
  return validate_path(g, std::move(nodes));
}

ProductGraph make_product(const Graph& g, std::size_t bound) {
  if (bound == 0) throw InvalidArgumentError("memory bound must be positive");
  return ProductGraph{&g, bound};
}

UltimatelyPeriodicPath lasso_of_memoryless(const ProductGraph& product,
                                           const std::vector<std::uint32_t>& choice,
                                           std::uint32_t start) {
  if (choice.size() != product.node_count()) throw InvalidArgumentError("choice size mismatch");
  std::vector<std::size_t> position(product.node_count(), SIZE_MAX);
  std::vector<std::uint32_t> trail;
  std::uint32_t current = start;
  while (position.at(current) == SIZE_MAX) {
    position[current] = trail.size();
    trail.push_back(current);
    const std::uint32_t next = choice[current];
    if (next >= product.node_count() || !product.has_edge(current, next))
      throw ChoiceNotEdgeError("product strategy moves along a non-edge");
    current = next;
  }
  std::vector<NodeId> prefix, cycle;
  for (std::size_t i = 0; i < trail.size(); ++i)
    (i < position[current] ? prefix : cycle).push_back(product.node(trail[i]));
  return make_lasso(*product.base, std::move(prefix), std::move(cycle));
}

FiniteStrategy strategy_from_product(const ProductGraph& product,
                                     const std::vector<std::uint32_t>& choice, NodeId v0) {
  const Graph& g = *product.base;
  const std::size_t n = g.node_count(), b = product.bound;
  FiniteStrategy sigma;
  sigma.start = v0;
  sigma.memory = MemoryStructure{b, 0, n, std::vector<MemoryState>(n * b)};
  sigma.choice.assign(n * b, kUndefined);
  for (NodeId v = 0; v < n; ++v)
    for (MemoryState m = 0; m < b; ++m) {
      const std::uint32_t id = product.id(v, m);
      const std::uint32_t to = id < choice.size() ? choice[id] : UINT32_MAX;
      if (to != UINT32_MAX) {
        sigma.choice[v * b + m] = product.node(to);
        sigma.memory.update[m * n + v] = product.memory(to);
      } else {
        if (!g.successors(v).empty()) sigma.choice[v * b + m] = g.successors(v).front();
        sigma.memory.update[m * n + v] = m;
      }
    }
  return sigma;
}

BoundedMemorySolution solve_bounded_memory(const Graph& g, const RewardSpec& spec, NodeId v0,
                                           std::size_t bound, BoundedMemoryLimits limits) {
  spec.check_matches(g);
  if (v0 >= g.node_count()) throw IndexOutOfRangeError("start node out of range");
  if (g.node_count() > limits.max_nodes)
    throw InstanceTooLargeError("bounded-memory enumeration (nodes)", g.node_count(),
                                limits.max_nodes);
  if (bound > limits.max_memory)
    throw InstanceTooLargeError("bounded-memory enumeration (memory)", bound, limits.max_memory);
  const ProductGraph product = make_product(g, bound);
  LassoSearch search(product, spec);
  search.run(product.id(v0, 0));
  if (!search.best_lasso) throw NoPathError("no infinite path from the start node");
  return {*search.best_value, strategy_from_product(product, search.best_choice, v0),
          std::move(*search.best_lasso), search.examined};
}

double memory_error_bound(const RewardSpec& spec, std::size_t node_count, std::size_t bound) {
  if (!spec.node_invariant()) throw NodeVariantSpecError();
  const double lambda = spec.lambda(0), gamma = spec.gamma(0);
  if (bound <= 1) throw InvalidArgumentError("memory bound must exceed 1");
  if (gamma >= 1.0) throw InvalidArgumentError("memory error bound needs gamma < 1");
  if (node_count <= 1) return 0.0;
  // floor(ln B / ln |V|), computed exactly in integers
  long exponent = 0;
  for (std::size_t power = node_count; power <= bound; power *= node_count) {
    ++exponent;
    if (power > bound / node_count) break;
  }
  return lambda / (1.0 - gamma) * std::pow(gamma, static_cast<double>(exponent - 1));
}

}  // namespace rrp
