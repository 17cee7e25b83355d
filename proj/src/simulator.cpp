#include "rrp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <thread>
#include <vector>

namespace rrp {
namespace {

// Independent engine per (seed, trial) so any partition of trials over
// threads draws identical numbers.
std::mt19937_64 trial_engine(std::uint64_t seed, std::size_t trial) {
  const std::uint64_t t = trial;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
  return std::mt19937_64(seq);
}

double run_trial(const RewardSpec& spec, std::span<const NodeId> path, Generation generation,
                 std::mt19937_64& rng) {
  // Accumulation starts at t = 0: a node first visited at t holds rewards
  // generated at times 0..t.
  std::vector<long long> last_collect(spec.node_count(), -1);
  double collected = 0.0;
  for (std::size_t t = 0; t < path.size(); ++t) {
    const NodeId v = path[t];
    const double lambda = spec.lambda(v), gamma = spec.gamma(v);
    const long long now = static_cast<long long>(t);
    const long long gap = now - last_collect[v];
    if (generation == Generation::kDeterministic) {
      double mass = 0.0;
      for (long long k = 0; k < gap; ++k) mass = mass * gamma + lambda;
      collected += mass;
    } else if (gamma == 1.0) {
      // units never die, so the per-step counts simply add up
      std::poisson_distribution<long long> arrivals(lambda * static_cast<double>(gap));
      if (lambda > 0.0) collected += static_cast<double>(arrivals(rng));
    } else if (lambda > 0.0) {
      std::poisson_distribution<long long> arrivals(lambda);
      for (long long born = last_collect[v] + 1; born <= now; ++born) {
        const long long units = arrivals(rng);
        if (units == 0) continue;
        const double survive = std::pow(gamma, static_cast<double>(now - born));
        std::binomial_distribution<long long> survivors(units, survive);
        collected += static_cast<double>(survivors(rng));
      }
    }
    last_collect[v] = now;
  }
  return collected;
}

// Pairwise summation over a fixed split, independent of thread count.
double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double x : values) s += x;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SimResult run_trials(const RewardSpec& spec, std::span<const NodeId> path, const SimConfig& config,
                     double scale) {
  if (config.trials == 0) throw InvalidArgumentError("trials must be positive");
  std::vector<double> totals(config.trials);
  std::size_t threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, config.trials);
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t trial = begin; trial < end; ++trial) {
      auto rng = trial_engine(config.seed, trial);
      totals[trial] = run_trial(spec, path, config.generation, rng) * scale;
    }
  };
  if (threads == 1) {
    worker(0, config.trials);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (config.trials + threads - 1) / threads;
    for (std::size_t begin = 0; begin < config.trials; begin += chunk)
      pool.emplace_back(worker, begin, std::min(config.trials, begin + chunk));
  }

  SimResult out;
  out.trials = config.trials;
  out.mean = pairwise_sum(totals) / static_cast<double>(config.trials);
  if (config.trials > 1) {
    std::vector<double> squared(config.trials);
    for (std::size_t i = 0; i < config.trials; ++i)
      squared[i] = (totals[i] - out.mean) * (totals[i] - out.mean);
    const double variance = pairwise_sum(squared) / static_cast<double>(config.trials - 1);
    out.standard_error = std::sqrt(variance / static_cast<double>(config.trials));
  }
  return out;
}

}  // namespace

SimResult simulate_finite_reward(const Graph& g, const RewardSpec& spec, const Path& p,
                                 const SimConfig& config) {
  spec.check_matches(g);
  if (p.length() != config.horizon)
    throw HorizonMismatchError("path length " + std::to_string(p.length()) +
                               " differs from horizon " + std::to_string(config.horizon));
  return run_trials(spec, p.nodes(), config, 1.0);
}

SimResult simulate_average_reward(const Graph& g, const RewardSpec& spec,
                                  const UltimatelyPeriodicPath& upp, const SimConfig& config) {
  spec.check_matches(g);
  if (config.horizon < 100 * upp.period())
    throw InvalidArgumentError("average-reward simulation needs horizon >= 100 * period");
  const auto nodes = upp.unroll(config.horizon);
  return run_trials(spec, nodes, config, 1.0 / static_cast<double>(config.horizon + 1));
}

}  // namespace rrp
