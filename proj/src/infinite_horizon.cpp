#include "rrp/infinite_horizon.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace rrp {
namespace {

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

void check_discounted(const RewardSpec& spec) {
  for (double gamma : spec.gammas())
    if (gamma >= 1.0)
      throw InvalidArgumentError(
          "truncated approximation needs gamma < 1 at every node (use the undiscounted solver)");
}

// Best cycle of one strongly connected component, in global state ids.
struct ComponentCycle {
  double mean;
  std::vector<std::uint32_t> cycle;
};

class ComponentSolver {
 public:
  ComponentSolver(const TruncatedGraph& tg, const std::vector<std::uint32_t>& members,
                  std::size_t karp_limit)
      : tg_(tg), members_(members), karp_limit_(karp_limit) {
    std::sort(members_.begin(), members_.end(),
              [&](std::uint32_t a, std::uint32_t b) { return tg_.key_less(a, b); });
    for (std::uint32_t i = 0; i < members_.size(); ++i) local_[members_[i]] = i;
    local_adjacency_.resize(members_.size());
    for (std::uint32_t i = 0; i < members_.size(); ++i)
      for (std::uint32_t w : tg_.successors()[members_[i]])
        if (auto it = local_.find(w); it != local_.end()) local_adjacency_[i].push_back(it->second);
  }

  // `weight` is indexed by global state id.
  ComponentCycle solve(std::span<const double> weight, CycleMode mode) const {
    std::vector<double> local_weight(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i) local_weight[i] = weight[members_[i]];
    MeanCycle best = members_.size() <= karp_limit_
                         ? karp_mean_cycle(local_adjacency_, local_weight, mode)
                         : howard_mean_cycle(local_adjacency_, local_weight, mode);
    ComponentCycle out{best.mean, {}};
    for (std::uint32_t i : best.cycle) out.cycle.push_back(members_[i]);
    return out;
  }

 private:
  const TruncatedGraph& tg_;
  std::vector<std::uint32_t> members_;
  std::size_t karp_limit_;
  std::unordered_map<std::uint32_t, std::uint32_t> local_;
  Adjacency local_adjacency_;
};

// Keeps the best component cycle; ties go to the smaller start state.
void keep_best(std::optional<ComponentCycle>& best, ComponentCycle candidate, bool maximize,
               const TruncatedGraph& tg) {
  if (!best) {
    best = std::move(candidate);
    return;
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(best->mean));
  const double diff = maximize ? candidate.mean - best->mean : best->mean - candidate.mean;
  if (diff > tol || (std::abs(diff) <= tol && tg.key_less(candidate.cycle[0], best->cycle[0])))
    best = std::move(candidate);
}

UltimatelyPeriodicPath project(const Graph& g, const TruncatedGraph& tg,
                               const std::vector<std::uint32_t>& cycle) {
  const auto reach = tg.reach_path(cycle.front());
  std::vector<NodeId> prefix, period;
  for (std::size_t i = 0; i + 1 < reach.size(); ++i) prefix.push_back(tg.node(reach[i]));
  for (std::uint32_t s : cycle) period.push_back(tg.node(s));
  // Shortest lasso for the same infinite path.
  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  return make_lasso(g, std::move(prefix), std::move(period));
}

}  // namespace

std::size_t compute_K(const RewardSpec& spec, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgumentError("epsilon must be positive");
  check_discounted(spec);
  std::size_t K = 1;
  for (std::size_t v = 0; v < spec.node_count(); ++v) {
    const double lambda = spec.lambda(v), gamma = spec.gamma(v);
    if (lambda == 0.0) continue;
    double x = std::log(epsilon * (1.0 - gamma) / lambda) / std::log(gamma);
    if (std::abs(x - std::round(x)) < 1e-9) x = std::round(x);
    std::size_t k = x <= 1.0 ? 1 : static_cast<std::size_t>(std::ceil(x));
    while (lambda * std::pow(gamma, static_cast<double>(k)) / (1.0 - gamma) >
           epsilon * (1.0 + 1e-12))
      ++k;
    K = std::max(K, k);
  }
  return K;
}

WeightPair state_weights(const RewardSpec& spec, const AugmentedState& state, std::size_t K) {
  const NodeId v = state.node;
  const double lambda = spec.lambda(v), gamma = spec.gamma(v);
  const std::size_t age = state.ages.at(v);
  WeightPair w;
  if (age > 0) {
    w.over_cost = w.under_cost = std::pow(gamma, static_cast<double>(age));
    w.r_under = w.r_over = accumulated_reward(lambda, gamma, age);
  } else {
    w.over_cost = std::pow(gamma, static_cast<double>(K));
    w.under_cost = 0.0;
    w.r_under = accumulated_reward(lambda, gamma, K);
    w.r_over = lambda / (1.0 - gamma);
  }
  return w;
}

AugmentedState TruncatedGraph::state(std::uint32_t id) const {
  const std::uint32_t* key = keys_.data() + id * stride_;
  return AugmentedState{key[0], std::vector<std::uint32_t>(key + 1, key + stride_)};
}

std::optional<std::uint32_t> TruncatedGraph::find(const AugmentedState& s) const {
  for (std::uint32_t id = 0; id < size(); ++id)
    if (node(id) == s.node && std::equal(s.ages.begin(), s.ages.end(), keys_.begin() + id * stride_ + 1,
                                         keys_.begin() + (id + 1) * stride_))
      return id;
  return std::nullopt;
}

bool TruncatedGraph::key_less(std::uint32_t a, std::uint32_t b) const {
  return std::lexicographical_compare(keys_.begin() + a * stride_, keys_.begin() + (a + 1) * stride_,
                                      keys_.begin() + b * stride_, keys_.begin() + (b + 1) * stride_);
}

std::vector<std::uint32_t> TruncatedGraph::reach_path(std::uint32_t target) const {
  std::vector<std::uint32_t> path{target};
  while (path.back() != 0) path.push_back(bfs_parent_[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

TruncatedGraph build_truncated(const Graph& g, NodeId v0, std::size_t K, std::size_t state_budget) {
  if (K == 0) throw InvalidArgumentError("K must be at least 1");
  if (v0 >= g.node_count()) throw IndexOutOfRangeError("start node out of range");
  const std::size_t n = g.node_count();
  TruncatedGraph tg;
  tg.K_ = K;
  tg.stride_ = n + 1;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, KeyHash> index;

  std::vector<std::uint32_t> key(n + 1, 1);
  key[0] = v0;
  auto intern = [&](std::uint32_t parent) -> std::uint32_t {
    auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(tg.successors_.size()));
    if (inserted) {
      if (tg.successors_.size() >= state_budget)
        throw StateBudgetExceededError("truncated augmented graph with K=" + std::to_string(K) +
                                           " has more than " + std::to_string(state_budget) +
                                           " reachable states",
                                       state_budget);
      tg.keys_.insert(tg.keys_.end(), key.begin(), key.end());
      tg.successors_.emplace_back();
      tg.bfs_parent_.push_back(parent);
    }
    return it->second;
  };
  intern(0);

  const std::uint32_t cap = static_cast<std::uint32_t>(K);
  for (std::uint32_t id = 0; id < tg.successors_.size(); ++id) {
    const NodeId from = tg.keys_[id * tg.stride_];
    for (NodeId to : g.successors(from)) {
      key[0] = to;
      for (std::size_t u = 0; u < n; ++u) {
        const std::uint32_t a = tg.keys_[id * tg.stride_ + 1 + u];
        key[1 + u] = u == from ? 1 : (a > 0 && a + 1 <= cap ? a + 1 : 0);
      }
      const std::uint32_t next = intern(id);
      tg.successors_[id].push_back(next);
    }
    auto& succ = tg.successors_[id];
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  return tg;
}

ValueBracket solve_truncated(const Graph& g, const RewardSpec& spec, NodeId v0, std::size_t K,
                             InfiniteOptions options) {
  spec.check_matches(g);
  check_discounted(spec);
  const TruncatedGraph tg = build_truncated(g, v0, K, options.state_budget);

  std::vector<double> r_under(tg.size()), r_over(tg.size()), c_over, c_under;
  const bool costs = options.with_cost_bracket;
  if (costs) {
    if (!spec.node_invariant()) throw NodeVariantSpecError();
    c_over.resize(tg.size());
    c_under.resize(tg.size());
  }
  for (std::uint32_t id = 0; id < tg.size(); ++id) {
    const WeightPair w = state_weights(spec, tg.state(id), K);
    r_under[id] = w.r_under;
    r_over[id] = w.r_over;
    if (costs) {
      c_over[id] = w.over_cost;
      c_under[id] = w.under_cost;
    }
  }

  // Limit-average values ignore transient states; only cyclic SCCs matter.
  const auto scc = scc_decompose(tg.successors());
  std::optional<ComponentCycle> best_under, best_over, best_c_over, best_c_under;
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    if (!scc.cyclic[c]) continue;
    ComponentSolver solver(tg, scc.components[c], options.karp_state_limit);
    keep_best(best_under, solver.solve(r_under, CycleMode::kMax), true, tg);
    keep_best(best_over, solver.solve(r_over, CycleMode::kMax), true, tg);
    if (costs) {
      keep_best(best_c_over, solver.solve(c_over, CycleMode::kMin), false, tg);
      keep_best(best_c_under, solver.solve(c_under, CycleMode::kMin), false, tg);
    }
  }
  if (!best_under) throw NoPathError("no infinite path from the start node");

  auto pi_under = project(g, tg, best_under->cycle);
  auto pi_over = project(g, tg, best_over->cycle);
  const double achieved = r_av_periodic(spec, pi_under).value;
  ValueBracket out{achieved,
                   best_over->mean,
                   best_under->mean,
                   std::move(pi_under),
                   std::move(pi_over),
                   K,
                   best_over->mean - achieved,
                   tg.size(),
                   std::nullopt,
                   std::nullopt};
  if (costs) {
    out.cost_over = best_c_over->mean;
    out.cost_under = best_c_under->mean;
  }
  const double tol = kTolerance * std::max(1.0, std::abs(out.r_over));
  if (out.r_under_bound > out.r_under + tol || out.r_under > out.r_over + tol)
    throw std::logic_error("value bracket is inconsistent");
  return out;
}

ValueBracket solve_infinite_approx(const Graph& g, const RewardSpec& spec, NodeId v0,
                                   double epsilon, InfiniteOptions options) {
  if (!(epsilon > 0.0)) throw InvalidArgumentError("epsilon must be positive");
  spec.check_matches(g);
  if (spec.all_undiscounted()) {
    auto exact = solve_nondiscounted(g, spec.lambdas(), v0);
    return ValueBracket{exact.value, exact.value, exact.value, exact.witness, exact.witness,
                        0,           0.0,         0,           std::nullopt,  std::nullopt};
  }
  const std::size_t K = compute_K(spec, epsilon);
  try {
    return solve_truncated(g, spec, v0, K, options);
  } catch (const StateBudgetExceededError&) {
    // Report the tolerance that the largest feasible K would give.
    std::size_t feasible = 0;
    for (std::size_t k = 1; k < K; ++k) {
      try {
        build_truncated(g, v0, k, options.state_budget);
        feasible = k;
      } catch (const StateBudgetExceededError&) {
        break;
      }
    }
    double best_eps = 0.0;
    for (std::size_t v = 0; v < spec.node_count(); ++v)
      best_eps = std::max(best_eps, spec.lambda(v) *
                                        std::pow(spec.gamma(v), static_cast<double>(feasible)) /
                                        (1.0 - spec.gamma(v)));
    throw StateBudgetExceededError(
        "epsilon " + std::to_string(epsilon) + " needs K=" + std::to_string(K) +
            "; smallest feasible epsilon is about " + std::to_string(best_eps) +
            (feasible ? " (K=" + std::to_string(feasible) + ")" : std::string(" (none)")),
        options.state_budget);
  }
}

NondiscountedSolution solve_nondiscounted(const Graph& g, std::span<const double> lambda,
                                          NodeId v0) {
  if (lambda.size() != g.node_count()) throw InvalidArgumentError("lambda size mismatch");
  const WeightedScc best = max_reachable_scc(g, v0, lambda);
  const Path tour = covering_cycle(g, best.nodes);
  std::vector<NodeId> period(tour.nodes().begin(), tour.nodes().end() - 1);
  std::vector<NodeId> prefix = *shortest_path(g, v0, period.front());
  prefix.pop_back();
  return {best.total_weight, make_lasso(g, std::move(prefix), std::move(period))};
}

DecisionResult decide_infinite_value(const Graph& g, const RewardSpec& spec, NodeId v0,
                                     double threshold, double epsilon, InfiniteOptions options) {
  ValueBracket bracket = solve_infinite_approx(g, spec, v0, epsilon, options);
  Decision d = Decision::kUnknown;
  if (bracket.r_under >= threshold - kTolerance)
    d = Decision::kYes;
  else if (bracket.r_over < threshold - kTolerance)
    d = Decision::kNo;
  return {d, std::move(bracket)};
}

}  // namespace rrp
