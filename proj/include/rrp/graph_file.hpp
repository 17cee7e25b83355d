#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rrp/graph.hpp"
#include "rrp/reward.hpp"

namespace rrp {

// Malformed graph document; field() names the offending entry, e.g. "nodes[2].gamma".
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct NodeSpec {
  std::string id;
  std::optional<double> lambda;
  std::optional<double> gamma;
  std::optional<DecayProfile> decay_profile;

  bool operator==(const NodeSpec&) const = default;
};

// JSON graph document:
//   {"defaults": {"lambda": 1, "gamma": 0.5},
//    "nodes": [{"id": "a", "lambda": 2, "gamma": 0.9},
//              {"id": "b", "decay_profile": {"table": [1, 0.5], "tail": "geometric", "ratio": 0.5}}],
//    "edges": [["a", "b"], ["b", "a"]]}
struct GraphSpecFile {
  std::optional<double> default_lambda;
  std::optional<double> default_gamma;
  std::vector<NodeSpec> nodes;
  std::vector<std::pair<std::string, std::string>> edges;

  bool operator==(const GraphSpecFile&) const = default;
};

GraphSpecFile parse_graph_spec(std::string_view text);
GraphSpecFile load_graph_spec(const std::string& path);
std::string serialize_graph_spec(const GraphSpecFile& spec);

Graph to_graph(const GraphSpecFile& spec);
std::vector<double> to_lambda(const GraphSpecFile& spec);
// Requires a gamma (own or default) for every node.
RewardSpec to_reward_spec(const GraphSpecFile& spec);
// Nodes without a profile use the geometric profile of their gamma.
std::vector<DecayProfile> to_decay_profiles(const GraphSpecFile& spec);

}  // namespace rrp
