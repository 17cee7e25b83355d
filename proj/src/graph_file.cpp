#include "rrp/graph_file.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rrp {
namespace {

using nlohmann::json;

double number_at(const json& parent, const char* key, const std::string& field) {
  const json& value = parent.at(key);
  if (!value.is_number()) throw ParseError(field, "expected a number");
  return value.get<double>();
}

std::optional<double> optional_number(const json& parent, const char* key,
                                      const std::string& field) {
  if (!parent.contains(key)) return std::nullopt;
  return number_at(parent, key, field);
}

void check_lambda(double lambda, const std::string& field) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParseError(field, "lambda must be >= 0");
}

void check_gamma(double gamma, const std::string& field) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ParseError(field, "gamma must lie in (0, 1]");
}

DecayProfile parse_profile(const json& j, const std::string& field) {
  if (!j.is_object()) throw ParseError(field, "expected an object");
  if (!j.contains("table") || !j["table"].is_array())
    throw ParseError(field + ".table", "expected a number list");
  std::vector<double> table;
  for (std::size_t i = 0; i < j["table"].size(); ++i) {
    if (!j["table"][i].is_number())
      throw ParseError(field + ".table[" + std::to_string(i) + "]", "expected a number");
    table.push_back(j["table"][i].get<double>());
  }
  DecayProfile::Tail tail = DecayProfile::Tail::kNone;
  double ratio = 0.0;
  if (j.contains("tail")) {
    if (!j["tail"].is_string()) throw ParseError(field + ".tail", "expected a string");
    const std::string name = j["tail"].get<std::string>();
    if (name == "geometric") {
      tail = DecayProfile::Tail::kGeometric;
      if (!j.contains("ratio")) throw ParseError(field + ".ratio", "geometric tail needs a ratio");
      ratio = number_at(j, "ratio", field + ".ratio");
    } else if (name == "zero") {
      tail = DecayProfile::Tail::kZero;
    } else {
      throw ParseError(field + ".tail", "expected \"geometric\" or \"zero\"");
    }
  }
  try {
    return DecayProfile(std::move(table), tail, ratio);
  } catch (const InvalidArgumentError& e) {
    throw ParseError(field, e.what());
  }
}

json profile_to_json(const DecayProfile& profile) {
  json j;
  j["table"] = profile.table();
  switch (profile.tail()) {
    case DecayProfile::Tail::kGeometric:
      j["tail"] = "geometric";
      j["ratio"] = profile.ratio();
      break;
    case DecayProfile::Tail::kZero:
      j["tail"] = "zero";
      break;
    case DecayProfile::Tail::kNone:
      break;
  }
  return j;
}

}  // namespace

GraphSpecFile parse_graph_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  if (!doc.is_object()) throw ParseError("document", "expected an object");

  GraphSpecFile out;
  if (doc.contains("defaults")) {
    const json& d = doc["defaults"];
    if (!d.is_object()) throw ParseError("defaults", "expected an object");
    out.default_lambda = optional_number(d, "lambda", "defaults.lambda");
    out.default_gamma = optional_number(d, "gamma", "defaults.gamma");
    if (out.default_lambda) check_lambda(*out.default_lambda, "defaults.lambda");
    if (out.default_gamma) check_gamma(*out.default_gamma, "defaults.gamma");
  }

  if (!doc.contains("nodes") || !doc["nodes"].is_array() || doc["nodes"].empty())
    throw ParseError("nodes", "expected a non-empty list");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
    const json& n = doc["nodes"][i];
    const std::string field = "nodes[" + std::to_string(i) + "]";
    if (!n.is_object()) throw ParseError(field, "expected an object");
    if (!n.contains("id") || !n["id"].is_string()) throw ParseError(field + ".id", "expected a string");
    NodeSpec node;
    node.id = n["id"].get<std::string>();
    if (node.id.empty()) throw ParseError(field + ".id", "must not be empty");
    if (!ids.insert(node.id).second) throw ParseError(field + ".id", "duplicate id '" + node.id + "'");
    node.lambda = optional_number(n, "lambda", field + ".lambda");
    node.gamma = optional_number(n, "gamma", field + ".gamma");
    if (node.lambda) check_lambda(*node.lambda, field + ".lambda");
    if (node.gamma) check_gamma(*node.gamma, field + ".gamma");
    if (n.contains("decay_profile")) {
      if (node.gamma)
        throw ParseError(field + ".decay_profile", "gamma and decay_profile are mutually exclusive");
      node.decay_profile = parse_profile(n["decay_profile"], field + ".decay_profile");
    }
    if (!node.lambda && !out.default_lambda)
      throw ParseError(field + ".lambda", "missing and no default given");
    out.nodes.push_back(std::move(node));
  }

  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw ParseError("edges", "expected a list");
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    const json& e = doc["edges"][i];
    const std::string field = "edges[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw ParseError(field, "expected [from_id, to_id]");
    for (int k = 0; k < 2; ++k)
      if (!ids.count(e[k].get<std::string>()))
        throw ParseError(field + "[" + std::to_string(k) + "]",
                         "unknown node id '" + e[k].get<std::string>() + "'");
    out.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

GraphSpecFile load_graph_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("file", "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_spec(buffer.str());
}

std::string serialize_graph_spec(const GraphSpecFile& spec) {
  json doc;
  if (spec.default_lambda || spec.default_gamma) {
    json d = json::object();
    if (spec.default_lambda) d["lambda"] = *spec.default_lambda;
    if (spec.default_gamma) d["gamma"] = *spec.default_gamma;
    doc["defaults"] = d;
  }
  doc["nodes"] = json::array();
  for (const auto& node : spec.nodes) {
    json n;
    n["id"] = node.id;
    if (node.lambda) n["lambda"] = *node.lambda;
    if (node.gamma) n["gamma"] = *node.gamma;
    if (node.decay_profile) n["decay_profile"] = profile_to_json(*node.decay_profile);
    doc["nodes"].push_back(n);
  }
  doc["edges"] = json::array();
  for (const auto& [from, to] : spec.edges) doc["edges"].push_back({from, to});
  return doc.dump(2) + "\n";
}

Graph to_graph(const GraphSpecFile& spec) {
  std::vector<std::string> labels;
  for (const auto& node : spec.nodes) labels.push_back(node.id);
  auto index_of = [&](const std::string& id) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == id) return static_cast<NodeId>(i);
    throw ParseError("edges", "unknown node id '" + id + "'");
  };
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& [from, to] : spec.edges) edges.emplace_back(index_of(from), index_of(to));
  const std::size_t n = labels.size();
  return Graph(n, std::move(edges), std::move(labels));
}

std::vector<double> to_lambda(const GraphSpecFile& spec) {
  std::vector<double> lambda;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const auto& node = spec.nodes[i];
    if (!node.lambda && !spec.default_lambda)
      throw ParseError("nodes[" + std::to_string(i) + "].lambda", "missing and no default given");
    lambda.push_back(node.lambda ? *node.lambda : *spec.default_lambda);
  }
  return lambda;
}

RewardSpec to_reward_spec(const GraphSpecFile& spec) {
  std::vector<double> gamma;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const auto& node = spec.nodes[i];
    if (!node.gamma && !spec.default_gamma)
      throw ParseError("nodes[" + std::to_string(i) + "].gamma", "missing and no default given");
    gamma.push_back(node.gamma ? *node.gamma : *spec.default_gamma);
  }
  return RewardSpec(to_lambda(spec), std::move(gamma));
}

std::vector<DecayProfile> to_decay_profiles(const GraphSpecFile& spec) {
  std::vector<DecayProfile> profiles;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const auto& node = spec.nodes[i];
    const std::string field = "nodes[" + std::to_string(i) + "]";
    if (node.decay_profile) {
      profiles.push_back(*node.decay_profile);
      continue;
    }
    const std::optional<double> gamma = node.gamma ? node.gamma : spec.default_gamma;
    if (!gamma) throw ParseError(field + ".decay_profile", "missing and node has no gamma");
    if (*gamma >= 1.0)
      throw ParseError(field + ".gamma", "gamma = 1 has no decaying geometric profile");
    profiles.push_back(DecayProfile::geometric(*gamma));
  }
  return profiles;
}

}  // namespace rrp
