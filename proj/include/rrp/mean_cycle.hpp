#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rrp {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

enum class CycleMode { kMin, kMax };

struct MeanCycle {
  double mean = 0.0;
  // One period of the cycle, rotated to start at its smallest id; the last
  // entry has an edge back to the first.
  std::vector<std::uint32_t> cycle;
};

// Mean of the node weights along `cycle`.
double cycle_mean(std::span<const std::uint32_t> cycle, std::span<const double> weight);

// Karp's minimum (or, by negation, maximum) cycle mean on a strongly connected
// node-weighted digraph. Uses O(n^2) memory for the W table and its parents.
// Throws NotStronglyConnectedError.
MeanCycle karp_mean_cycle(const Adjacency& adjacency, std::span<const double> weight,
                          CycleMode mode);

// Howard policy iteration for the same problem; near-linear in practice and
// used for components too large for the Karp table.
MeanCycle howard_mean_cycle(const Adjacency& adjacency, std::span<const double> weight,
                            CycleMode mode);

}  // namespace rrp
