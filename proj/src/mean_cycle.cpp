#include "rrp/mean_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rrp/errors.hpp"
#include "rrp/graph.hpp"

namespace rrp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_strongly_connected(const Adjacency& adjacency, std::span<const double> weight) {
  if (adjacency.empty()) throw InvalidArgumentError("empty graph");
  if (weight.size() != adjacency.size()) throw InvalidArgumentError("weight size mismatch");
  const auto scc = scc_decompose(adjacency);
  if (scc.components.size() != 1 || !scc.cyclic[0])
    throw NotStronglyConnectedError("mean-cycle input is not strongly connected");
}

std::vector<std::uint32_t> rotate_to_min(std::vector<std::uint32_t> cycle) {
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

// Prefers the better mean, then the lexicographically smaller rotated cycle.
bool better_cycle(double mean, const std::vector<std::uint32_t>& cycle, double best_mean,
                  const std::vector<std::uint32_t>& best, bool minimize) {
  if (best.empty()) return true;
  const double tol = 1e-12 * std::max(1.0, std::abs(best_mean));
  if (minimize ? mean < best_mean - tol : mean > best_mean + tol) return true;
  if (std::abs(mean - best_mean) > tol) return false;
  return cycle < best;
}

}  // namespace

double cycle_mean(std::span<const std::uint32_t> cycle, std::span<const double> weight) {
  double total = 0.0;
  for (std::uint32_t v : cycle) total += weight[v];
  return total / static_cast<double>(cycle.size());
}

MeanCycle karp_mean_cycle(const Adjacency& adjacency, std::span<const double> weight,
                          CycleMode mode) {
  require_strongly_connected(adjacency, weight);
  const std::size_t n = adjacency.size();
  const double sign = mode == CycleMode::kMin ? 1.0 : -1.0;

  // walk[k*n + v]: minimum signed weight of a k-edge walk from node 0 to v,
  // counting the weight of every node entered.
  std::vector<double> walk((n + 1) * n, kInf);
  std::vector<std::uint32_t> parent((n + 1) * n, UINT32_MAX);
  walk[0] = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double* prev = walk.data() + (k - 1) * n;
    double* cur = walk.data() + k * n;
    std::uint32_t* par = parent.data() + k * n;
    for (std::uint32_t u = 0; u < n; ++u) {
      if (prev[u] == kInf) continue;
      for (std::uint32_t v : adjacency[u]) {
        const double candidate = prev[u] + sign * weight[v];
        if (candidate < cur[v]) {
          cur[v] = candidate;
          par[v] = u;
        }
      }
    }
  }

  double best_value = kInf;
  std::uint32_t best_node = UINT32_MAX;
  const double* last = walk.data() + n * n;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (last[v] == kInf) continue;
    double worst = -kInf;
    for (std::size_t k = 0; k < n; ++k) {
      const double wk = walk[k * n + v];
      if (wk == kInf) continue;
      worst = std::max(worst, (last[v] - wk) / static_cast<double>(n - k));
    }
    if (worst < best_value) {
      best_value = worst;
      best_node = v;
    }
  }
  if (best_node == UINT32_MAX) throw std::logic_error("Karp found no n-edge walk");

  // Every cycle on the optimal n-edge walk into best_node attains the optimum;
  // scan them all and keep the best as a guard against rounding.
  std::vector<std::uint32_t> trail(n + 1);
  trail[n] = best_node;
  for (std::size_t k = n; k > 0; --k) trail[k - 1] = parent[k * n + trail[k]];

  MeanCycle out;
  std::vector<std::size_t> previous(n, SIZE_MAX);
  for (std::size_t j = 0; j <= n; ++j) {
    const std::uint32_t v = trail[j];
    if (previous[v] != SIZE_MAX) {
      std::vector<std::uint32_t> cycle(trail.begin() + previous[v] + 1, trail.begin() + j + 1);
      cycle = rotate_to_min(std::move(cycle));
      const double mean = cycle_mean(cycle, weight);
      if (better_cycle(mean, cycle, out.mean, out.cycle, mode == CycleMode::kMin)) {
        out.mean = mean;
        out.cycle = std::move(cycle);
      }
    }
    previous[v] = j;
  }
  if (out.cycle.empty()) throw std::logic_error("Karp walk contains no cycle");
  return out;
}

MeanCycle howard_mean_cycle(const Adjacency& adjacency, std::span<const double> weight,
                            CycleMode mode) {
  require_strongly_connected(adjacency, weight);
  const std::size_t n = adjacency.size();
  const double sign = mode == CycleMode::kMax ? 1.0 : -1.0;  // maximize sign*weight
  std::vector<double> w(n);
  for (std::size_t v = 0; v < n; ++v) w[v] = sign * weight[v];

  std::vector<std::uint32_t> policy(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto& succ = adjacency[v];
    policy[v] = *std::max_element(succ.begin(), succ.end(),
                                  [&](std::uint32_t a, std::uint32_t b) { return w[a] < w[b]; });
  }

  std::vector<double> gain(n), bias(n);
  std::vector<std::vector<std::uint32_t>> reverse(n);
  std::vector<std::uint32_t> mark(n);
  std::vector<std::vector<std::uint32_t>> cycles;
  const std::size_t max_iterations = 100000;
  for (std::size_t iteration = 0;; ++iteration) {
    if (iteration == max_iterations) throw std::logic_error("policy iteration did not converge");

    // Evaluate: every policy component has exactly one cycle.
    cycles.clear();
    std::fill(mark.begin(), mark.end(), 0u);
    for (auto& r : reverse) r.clear();
    for (std::uint32_t v = 0; v < n; ++v) reverse[policy[v]].push_back(v);
    std::uint32_t color = 0;
    for (std::uint32_t start = 0; start < n; ++start) {
      if (mark[start] != 0) continue;
      ++color;
      std::uint32_t v = start;
      while (mark[v] == 0) {
        mark[v] = color;
        v = policy[v];
      }
      if (mark[v] != color) continue;  // ran into an already evaluated component
      std::vector<std::uint32_t> cycle{v};
      for (std::uint32_t u = policy[v]; u != v; u = policy[u]) cycle.push_back(u);
      double total = 0.0;
      for (std::uint32_t u : cycle) total += w[u];
      const double g = total / static_cast<double>(cycle.size());
      // bias(handle) = 0; bias(s) = w(s) - g + bias(policy(s)) through reverse edges
      const std::uint32_t handle = *std::min_element(cycle.begin(), cycle.end());
      std::vector<std::uint32_t> todo{handle};
      gain[handle] = g;
      bias[handle] = 0.0;
      while (!todo.empty()) {
        const std::uint32_t u = todo.back();
        todo.pop_back();
        for (std::uint32_t p : reverse[u]) {
          if (p == handle) continue;
          gain[p] = g;
          bias[p] = w[p] - g + bias[u];
          todo.push_back(p);
        }
      }
      cycles.push_back(std::move(cycle));
    }

    // Improve gain first, then bias.
    bool changed = false;
    for (std::uint32_t v = 0; v < n; ++v) {
      std::uint32_t choice = policy[v];
      for (std::uint32_t t : adjacency[v]) {
        const double tol = 1e-12 * std::max(1.0, std::abs(gain[choice]));
        if (gain[t] > gain[choice] + tol) choice = t;
      }
      if (choice != policy[v]) {
        policy[v] = choice;
        changed = true;
      }
    }
    if (!changed) {
      for (std::uint32_t v = 0; v < n; ++v) {
        std::uint32_t choice = policy[v];
        for (std::uint32_t t : adjacency[v]) {
          const double gtol = 1e-12 * std::max(1.0, std::abs(gain[choice]));
          const double btol = 1e-10 * std::max(1.0, std::abs(bias[choice]));
          if (std::abs(gain[t] - gain[choice]) <= gtol && bias[t] > bias[choice] + btol) choice = t;
        }
        if (choice != policy[v]) {
          policy[v] = choice;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  MeanCycle out;
  for (auto& cycle : cycles) {
    cycle = rotate_to_min(std::move(cycle));
    const double mean = cycle_mean(cycle, weight);
    if (better_cycle(mean, cycle, out.mean, out.cycle, mode == CycleMode::kMin)) {
      out.mean = mean;
      out.cycle = cycle;
    }
  }
  return out;
}

}  // namespace rrp
