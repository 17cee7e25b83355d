#include "rrp/finite_horizon.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace rrp {
namespace {

// Reward collected at node v when its last visit was `last` steps ago.
using StepReward = std::function<double(NodeId v, std::uint32_t last)>;

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint32_t x : key) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// One time layer; state i occupies keys[i*stride, (i+1)*stride) as
// [node, age_0, ..., age_{n-1}].
struct Layer {
  std::vector<std::uint32_t> keys;
  std::vector<double> value;
  std::vector<std::uint32_t> parent;

  std::size_t size() const { return value.size(); }
};

bool improves(double candidate, double incumbent) {
  return candidate > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent));
}

// Reorders a layer lexicographically by key so that scanning it in order
// implements the smallest-predecessor tie-break.
void sort_layer(Layer& layer, std::size_t stride) {
  std::vector<std::uint32_t> order(layer.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(
        layer.keys.begin() + a * stride, layer.keys.begin() + (a + 1) * stride,
        layer.keys.begin() + b * stride, layer.keys.begin() + (b + 1) * stride);
  });
  Layer sorted;
  sorted.keys.reserve(layer.keys.size());
  for (std::uint32_t i : order) {
    sorted.keys.insert(sorted.keys.end(), layer.keys.begin() + i * stride,
                       layer.keys.begin() + (i + 1) * stride);
    sorted.value.push_back(layer.value[i]);
    sorted.parent.push_back(layer.parent[i]);
  }
  layer = std::move(sorted);
}

struct DpResult {
  double value;
  std::vector<NodeId> witness;
  std::size_t states;
};

DpResult layered_dp(const Graph& g, NodeId v0, std::size_t horizon, const FiniteOptions& options,
                    const StepReward& reward) {
  if (v0 >= g.node_count()) throw IndexOutOfRangeError("start node out of range");
  if (horizon > options.max_horizon)
    throw InstanceTooLargeError("horizon", horizon, options.max_horizon);
  const std::size_t n = g.node_count();
  const std::size_t stride = n + 1;

  std::vector<Layer> layers(1);
  layers[0].keys.assign(stride, 1);
  layers[0].keys[0] = v0;
  layers[0].value.push_back(reward(v0, 1));
  layers[0].parent.push_back(UINT32_MAX);
  std::size_t stored = 1;

  std::vector<std::uint32_t> key(stride);
  for (std::size_t t = 1; t <= horizon; ++t) {
    const Layer& prev = layers.back();
    Layer next;
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, KeyHash> index;
    for (std::uint32_t i = 0; i < prev.size(); ++i) {
      const std::uint32_t* src = prev.keys.data() + i * stride;
      const NodeId from = src[0];
      for (NodeId to : g.successors(from)) {
        key[0] = to;
        for (std::size_t u = 0; u < n; ++u) key[1 + u] = u == from ? 1 : src[1 + u] + 1;
        const double candidate = prev.value[i] + reward(to, key[1 + to]);
        auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(next.size()));
        if (inserted) {
          next.keys.insert(next.keys.end(), key.begin(), key.end());
          next.value.push_back(candidate);
          next.parent.push_back(i);
          if (++stored > options.state_budget)
            throw StateBudgetExceededError("finite-horizon augmented states", options.state_budget);
        } else if (improves(candidate, next.value[it->second])) {
          next.value[it->second] = candidate;
          next.parent[it->second] = i;
        }
      }
    }
    if (next.size() == 0) throw NoPathError("no path of the requested length from start node");
    sort_layer(next, stride);
    layers.push_back(std::move(next));
  }

  const Layer& final_layer = layers.back();
  std::uint32_t best = 0;
  for (std::uint32_t i = 1; i < final_layer.size(); ++i)
    if (improves(final_layer.value[i], final_layer.value[best])) best = i;

  std::vector<NodeId> witness(horizon + 1);
  std::uint32_t cursor = best;
  for (std::size_t t = horizon + 1; t-- > 0;) {
    witness[t] = layers[t].keys[cursor * stride];
    cursor = layers[t].parent[cursor];
  }
  return {final_layer.value[best], std::move(witness), stored};
}

FiniteSolution finish(const Graph& g, DpResult dp, double replayed, std::size_t horizon) {
  if (std::abs(replayed - dp.value) > kTolerance * std::max(1.0, std::abs(dp.value)))
    throw std::logic_error("finite-horizon witness does not replay to the DP value");
  return {RewardValue{replayed, RewardKind::kFiniteSum, horizon},
          validate_path(g, std::move(dp.witness)), dp.states};
}

}  // namespace

FiniteSolution solve_finite(const Graph& g, const RewardSpec& spec, NodeId v0, std::size_t horizon,
                            FiniteOptions options) {
  spec.check_matches(g);
  auto dp = layered_dp(g, v0, horizon, options, [&](NodeId v, std::uint32_t last) {
    return accumulated_reward(spec.lambda(v), spec.gamma(v), last);
  });
  const double replayed = r_sum_finite(spec, std::span<const NodeId>(dp.witness));
  return finish(g, std::move(dp), replayed, horizon);
}

FiniteSolution solve_finite_decay(const Graph& g, std::span<const double> lambda,
                                  std::span<const DecayProfile> profiles, NodeId v0,
                                  std::size_t horizon, FiniteOptions options) {
  if (lambda.size() != g.node_count() || profiles.size() != g.node_count())
    throw InvalidArgumentError("per-node lambda/profile count does not match graph");
  auto dp = layered_dp(g, v0, horizon, options, [&](NodeId v, std::uint32_t last) {
    return lambda[v] * profiles[v].prefix_sum(0, last - 1);
  });
  std::vector<NodeId> nodes = dp.witness;
  const double replayed = r_sum_decay(profiles, lambda, validate_path(g, std::move(nodes))).value;
  return finish(g, std::move(dp), replayed, horizon);
}

bool decide_finite_value(const Graph& g, const RewardSpec& spec, NodeId v0, std::size_t horizon,
                         double threshold, FiniteOptions options) {
  try {
    return solve_finite(g, spec, v0, horizon, options).value.value >= threshold - kTolerance;
  } catch (const NoPathError&) {
    return false;  // no path of that length reaches any threshold
  }
}

}  // namespace rrp
