#include "rrp/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rrp {

RewardSpec::RewardSpec(std::vector<double> lambda, std::vector<double> gamma)
    : lambda_(std::move(lambda)), gamma_(std::move(gamma)) {
  if (lambda_.size() != gamma_.size())
    throw InvalidArgumentError("lambda and gamma sizes differ");
  if (lambda_.empty()) throw InvalidArgumentError("reward spec needs at least one node");
  for (double l : lambda_)
    if (!(l >= 0.0) || !std::isfinite(l)) throw InvalidArgumentError("lambda must be >= 0");
  for (double g : gamma_)
    if (!(g > 0.0 && g <= 1.0)) throw InvalidArgumentError("gamma must lie in (0, 1]");
}

RewardSpec RewardSpec::uniform(std::size_t node_count, double lambda, double gamma) {
  return RewardSpec(std::vector<double>(node_count, lambda),
                    std::vector<double>(node_count, gamma));
}

bool RewardSpec::node_invariant() const {
  return std::all_of(lambda_.begin(), lambda_.end(), [&](double l) { return l == lambda_[0]; }) &&
         std::all_of(gamma_.begin(), gamma_.end(), [&](double g) { return g == gamma_[0]; });
}

bool RewardSpec::all_undiscounted() const {
  return std::all_of(gamma_.begin(), gamma_.end(), [](double g) { return g == 1.0; });
}

void RewardSpec::check_matches(const Graph& g) const {
  if (node_count() != g.node_count())
    throw InvalidArgumentError("reward spec node count does not match graph");
}

DecayProfile::DecayProfile(std::vector<double> table, Tail tail, double ratio)
    : table_(std::move(table)), tail_(tail), ratio_(ratio) {
  if (table_.empty() || table_[0] != 1.0)
    throw InvalidArgumentError("decay profile must start with 1");
  for (std::size_t i = 1; i < table_.size(); ++i)
    if (!(table_[i] < table_[i - 1] && table_[i] > 0.0))
      throw InvalidArgumentError("decay profile table must be strictly decreasing and positive");
  if (tail_ == Tail::kGeometric && !(ratio_ > 0.0 && ratio_ < 1.0))
    throw InvalidArgumentError("geometric tail ratio must lie in (0, 1)");
  if (tail_ != Tail::kGeometric) ratio_ = 0.0;
  cumulative_.resize(table_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < table_.size(); ++i) cumulative_[i] = acc += table_[i];
}

DecayProfile DecayProfile::geometric(double gamma) {
  return DecayProfile({1.0}, Tail::kGeometric, gamma);
}

double DecayProfile::value(std::size_t i) const {
  if (i < table_.size()) return table_[i];
  switch (tail_) {
    case Tail::kZero:
      return 0.0;
    case Tail::kGeometric:
      return table_.back() * std::pow(ratio_, static_cast<double>(i - (table_.size() - 1)));
    case Tail::kNone:
      break;
  }
  throw ProfileTableExhaustedError(i);
}

double DecayProfile::sum_through(std::size_t j) const {
  const std::size_t last = table_.size() - 1;
  if (j <= last) return cumulative_[j];
  switch (tail_) {
    case Tail::kZero:
      return cumulative_[last];
    case Tail::kGeometric: {
      // sum_{m=1}^{j-last} G(last) * ratio^m
      double m = static_cast<double>(j - last);
      double geometric = -std::expm1(m * std::log(ratio_)) / (1.0 - ratio_);
      return cumulative_[last] + table_.back() * ratio_ * geometric;
    }
    case Tail::kNone:
      break;
  }
  throw ProfileTableExhaustedError(last + 1);
}

double DecayProfile::prefix_sum(std::size_t i, std::size_t j) const {
  if (j < i) return 0.0;
  double total = sum_through(j);
  return i == 0 ? total : total - sum_through(i - 1);
}

double accumulated_reward(double lambda, double gamma, std::size_t last) {
  if (gamma == 1.0) return lambda * static_cast<double>(last);
  // (1 - gamma^last) / (1 - gamma) without cancellation as gamma -> 1
  return lambda * -std::expm1(static_cast<double>(last) * std::log(gamma)) / (1.0 - gamma);
}

double eacc(const RewardSpec& spec, std::span<const NodeId> path, std::size_t t, NodeId v) {
  return accumulated_reward(spec.lambda(v), spec.gamma(v), last_visit(path, t, v));
}

double r_sum_finite(const RewardSpec& spec, std::span<const NodeId> path) {
  const auto last = last_visit_profile(path);
  double total = 0.0;
  for (std::size_t t = 0; t < path.size(); ++t)
    total += accumulated_reward(spec.lambda(path[t]), spec.gamma(path[t]), last[t]);
  return total;
}

RewardValue r_sum_finite(const RewardSpec& spec, const Path& p) {
  return {r_sum_finite(spec, std::span<const NodeId>(p.nodes())), RewardKind::kFiniteSum,
          p.length()};
}

double c_sum_finite(const RewardSpec& spec, std::span<const NodeId> path) {
  if (!spec.node_invariant()) throw NodeVariantSpecError();
  const double gamma = spec.gamma(0);
  const auto last = last_visit_profile(path);
  double total = 0.0;
  for (std::size_t l : last) total += std::pow(gamma, static_cast<double>(l));
  return total;
}

double c_sum_finite(const RewardSpec& spec, const Path& p) {
  return c_sum_finite(spec, std::span<const NodeId>(p.nodes()));
}

std::vector<std::size_t> steady_last_values(const UltimatelyPeriodicPath& upp) {
  // Once the prefix and one full period have passed, every cycle node's
  // previous occurrence lies inside the cycle, so periods two and three agree.
  const std::size_t period = upp.period();
  const std::size_t start = upp.prefix().size();
  const auto unrolled = upp.unroll(start + 3 * period - 1);
  const auto last = last_visit_profile(unrolled);
  std::vector<std::size_t> steady(last.begin() + start + 2 * period, last.end());
  if (!std::equal(steady.begin(), steady.end(), last.begin() + start + period))
    throw std::logic_error("lasso Last values failed to reach steady state");
  return steady;
}

double c_av_periodic(const RewardSpec& spec, const UltimatelyPeriodicPath& upp) {
  if (!spec.node_invariant()) throw NodeVariantSpecError();
  const double gamma = spec.gamma(0);
  double total = 0.0;
  for (std::size_t l : steady_last_values(upp)) total += std::pow(gamma, static_cast<double>(l));
  return total / static_cast<double>(upp.period());
}

RewardValue r_av_periodic(const RewardSpec& spec, const UltimatelyPeriodicPath& upp) {
  const auto steady = steady_last_values(upp);
  double total = 0.0;
  for (std::size_t i = 0; i < steady.size(); ++i) {
    NodeId v = upp.cycle()[i];
    total += accumulated_reward(spec.lambda(v), spec.gamma(v), steady[i]);
  }
  return {total / static_cast<double>(upp.period()), RewardKind::kLimitAverage, std::nullopt};
}

RewardValue r_sum_decay(std::span<const DecayProfile> profiles, std::span<const double> lambda,
                        const Path& p) {
  const auto& nodes = p.nodes();
  const auto last = last_visit_profile(nodes);
  double total = 0.0;
  for (std::size_t t = 0; t < nodes.size(); ++t) {
    NodeId v = nodes[t];
    total += lambda[v] * profiles[v].prefix_sum(0, last[t] - 1);
  }
  return {total, RewardKind::kFiniteSum, p.length()};
}

CycleBounds bounds_lemma(const Graph& g, const RewardSpec& spec, NodeId v0,
                         SearchLimits limits) {
  spec.check_matches(g);
  if (!spec.node_invariant()) throw NodeVariantSpecError();
  if (v0 >= g.node_count()) throw IndexOutOfRangeError("start node out of range");
  const Path longest = longest_simple_cycle(g, limits);
  const double lambda = spec.lambda(0), gamma = spec.gamma(0);
  CycleBounds out;
  out.longest_cycle = longest.length();
  out.lower = accumulated_reward(lambda, gamma, out.longest_cycle);
  out.upper = accumulated_reward(lambda, gamma, g.node_count());
  return out;
}

}  // namespace rrp
