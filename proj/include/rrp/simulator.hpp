#pragma once

#include <cstddef>
#include <cstdint>

#include "rrp/graph.hpp"
#include "rrp/reward.hpp"

namespace rrp {

enum class Generation {
  // Each node gains Poisson(lambda) reward units per step; every unit survives
  // each further step independently with probability gamma.
  kPoisson,
  // Reward mass evolves as mass <- mass * gamma + lambda; zero variance.
  kDeterministic,
};

struct SimConfig {
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  Generation generation = Generation::kPoisson;
  std::size_t horizon = 0;
  // Worker threads; 0 picks hardware concurrency. Results do not depend on it.
  std::size_t threads = 0;
};

struct SimResult {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};

// Monte Carlo estimate of the reward collected along a finite path.
// Throws HorizonMismatchError unless p.length() == config.horizon.
SimResult simulate_finite_reward(const Graph& g, const RewardSpec& spec, const Path& p,
                                 const SimConfig& config);

// Collected reward over the first config.horizon steps of the lasso, divided by
// horizon + 1. Requires horizon >= 100 * period.
SimResult simulate_average_reward(const Graph& g, const RewardSpec& spec,
                                  const UltimatelyPeriodicPath& upp, const SimConfig& config);

}  // namespace rrp
