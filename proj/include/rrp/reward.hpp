#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rrp/graph.hpp"

namespace rrp {

inline constexpr double kTolerance = 1e-9;

// Per-node expected generated reward lambda(v) >= 0 and per-step survival
// probability gamma(v) in (0, 1].
class RewardSpec {
 public:
  RewardSpec(std::vector<double> lambda, std::vector<double> gamma);
  static RewardSpec uniform(std::size_t node_count, double lambda, double gamma);

  std::size_t node_count() const { return lambda_.size(); }
  double lambda(NodeId v) const { return lambda_.at(v); }
  double gamma(NodeId v) const { return gamma_.at(v); }
  std::span<const double> lambdas() const { return lambda_; }
  std::span<const double> gammas() const { return gamma_; }

  bool node_invariant() const;
  bool all_undiscounted() const;
  // Throws InvalidArgumentError if the node count differs from g.
  void check_matches(const Graph& g) const;

 private:
  std::vector<double> lambda_;
  std::vector<double> gamma_;
};

// Strictly decreasing decay sequence 1 = G(0) > G(1) > ... given as an explicit
// table followed by an optional tail rule.
class DecayProfile {
 public:
  enum class Tail { kNone, kGeometric, kZero };

  DecayProfile(std::vector<double> table, Tail tail = Tail::kNone, double ratio = 0.0);
  // G(i) = gamma^i.
  static DecayProfile geometric(double gamma);

  double value(std::size_t i) const;
  // Sum of G(i..j), inclusive; zero when j < i.
  double prefix_sum(std::size_t i, std::size_t j) const;

  const std::vector<double>& table() const { return table_; }
  Tail tail() const { return tail_; }
  double ratio() const { return ratio_; }
  bool operator==(const DecayProfile&) const = default;

 private:
  double sum_through(std::size_t j) const;

  std::vector<double> table_;
  std::vector<double> cumulative_;
  Tail tail_;
  double ratio_;
};

enum class RewardKind { kFiniteSum, kLimitAverage };

struct RewardValue {
  double value = 0.0;
  RewardKind kind = RewardKind::kFiniteSum;
  std::optional<std::size_t> horizon;
};

// Expected reward accumulated at a node whose last visit was `last` steps ago:
// lambda * (1 + gamma + ... + gamma^(last-1)).
double accumulated_reward(double lambda, double gamma, std::size_t last);

double eacc(const RewardSpec& spec, std::span<const NodeId> path, std::size_t t, NodeId v);
inline double eacc(const RewardSpec& spec, const Path& p, std::size_t t, NodeId v) {
  return eacc(spec, std::span<const NodeId>(p.nodes()), t, v);
}

double r_sum_finite(const RewardSpec& spec, std::span<const NodeId> path);
RewardValue r_sum_finite(const RewardSpec& spec, const Path& p);

// Cost forms; require a node-invariant spec (NodeVariantSpecError otherwise).
double c_sum_finite(const RewardSpec& spec, std::span<const NodeId> path);
double c_sum_finite(const RewardSpec& spec, const Path& p);
double c_av_periodic(const RewardSpec& spec, const UltimatelyPeriodicPath& upp);

// Last values over one steady-state period of the lasso.
std::vector<std::size_t> steady_last_values(const UltimatelyPeriodicPath& upp);

// Exact limit-average reward of prefix . cycle^omega.
RewardValue r_av_periodic(const RewardSpec& spec, const UltimatelyPeriodicPath& upp);

RewardValue r_sum_decay(std::span<const DecayProfile> profiles, std::span<const double> lambda,
                        const Path& p);

struct CycleBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t longest_cycle = 0;
};

// Closed-form bounds on the optimal limit-average reward from the longest
// simple cycle length p and |V|: lambda(1-gamma^p)/(1-gamma) and
// lambda(1-gamma^|V|)/(1-gamma).
CycleBounds bounds_lemma(const Graph& g, const RewardSpec& spec, NodeId v0,
                         SearchLimits limits = {});

}  // namespace rrp
