#include "rrp/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rrp/bounded_memory.hpp"
#include "rrp/errors.hpp"
#include "rrp/finite_horizon.hpp"
#include "rrp/graph_file.hpp"
#include "rrp/infinite_horizon.hpp"
#include "rrp/simulator.hpp"

namespace rrp::cli {
namespace {

using nlohmann::json;

// 12 significant digits keeps documents stable across platforms.
double rounded(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json labels_of(const Graph& g, const std::vector<NodeId>& nodes) {
  json out = json::array();
  for (NodeId v : nodes) out.push_back(g.label(v));
  return out;
}

json lasso_json(const Graph& g, const UltimatelyPeriodicPath& upp) {
  return {{"prefix", labels_of(g, upp.prefix())}, {"cycle", labels_of(g, upp.cycle())}};
}

std::vector<NodeId> parse_nodes(const Graph& g, const std::string& text, const std::string& field) {
  std::vector<std::string> tokens;
  if (text.find(',') != std::string::npos) {
    std::stringstream in(text);
    for (std::string tok; std::getline(in, tok, ',');) tokens.push_back(tok);
  } else {
    bool compact = !g.find_label(text);
    for (NodeId v = 0; v < g.node_count() && compact; ++v) compact = g.label(v).size() == 1;
    if (compact)
      for (char c : text) tokens.emplace_back(1, c);
    else if (!text.empty())
      tokens.push_back(text);
  }
  std::vector<NodeId> out;
  for (const auto& tok : tokens) {
    auto v = g.find_label(tok);
    if (!v) throw ParseError(field, "unknown node id '" + tok + "'");
    out.push_back(*v);
  }
  return out;
}

std::size_t state_budget() {
  if (const char* env = std::getenv("RRP_STATE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 5'000'000;
}

struct Options {
  std::string graph;
  std::string start;
  std::size_t horizon = 0;
  bool decay = false;
  double epsilon = 1e-4;
  double threshold = 0.0;
  std::size_t memory = 1;
  std::string path, prefix, cycle;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string generation = "poisson";
};

struct Loaded {
  GraphSpecFile file;
  Graph graph;
  NodeId start;
};

Loaded load(const Options& o) {
  GraphSpecFile file = load_graph_spec(o.graph);
  Graph g = to_graph(file);
  NodeId start = 0;
  if (!o.start.empty()) {
    auto v = g.find_label(o.start);
    if (!v) throw ParseError("--start", "unknown node id '" + o.start + "'");
    start = *v;
  }
  return {std::move(file), std::move(g), start};
}

int cmd_finite(const Options& o, json& doc) {
  auto [file, g, v0] = load(o);
  FiniteOptions fo;
  fo.state_budget = state_budget();
  double replay = 0.0;
  const FiniteSolution sol = [&] {
    if (o.decay) {
      const auto lambda = to_lambda(file);
      const auto profiles = to_decay_profiles(file);
      auto s = solve_finite_decay(g, lambda, profiles, v0, o.horizon, fo);
      replay = r_sum_decay(profiles, lambda, s.witness).value;
      return s;
    }
    const RewardSpec spec = to_reward_spec(file);
    auto s = solve_finite(g, spec, v0, o.horizon, fo);
    replay = r_sum_finite(spec, s.witness).value;
    return s;
  }();
  doc["value"] = rounded(sol.value.value);
  doc["witness"] = {{"path", labels_of(g, sol.witness.nodes())}};
  doc["replay"] = rounded(replay);
  doc["states"] = sol.states;
  return kExitOk;
}

json bracket_json(const Graph& g, const ValueBracket& b) {
  return {{"r_under", rounded(b.r_under)},
          {"r_over", rounded(b.r_over)},
          {"K", b.K},
          {"epsilon_achieved", rounded(b.epsilon_achieved)},
          {"pi_under", lasso_json(g, b.pi_under)},
          {"pi_over", lasso_json(g, b.pi_over)}};
}

int cmd_nondiscounted(const Loaded& in, json& doc) {
  const auto lambda = to_lambda(in.file);
  const auto sol = solve_nondiscounted(in.graph, lambda, in.start);
  doc["value"] = rounded(sol.value);
  doc["witness"] = lasso_json(in.graph, sol.witness);
  return kExitOk;
}

int cmd_infinite(const Options& o, json& doc, std::ostream& err) {
  Loaded in = load(o);
  const RewardSpec spec = to_reward_spec(in.file);
  if (spec.all_undiscounted()) {
    err << "note: every gamma is 1, solving exactly\n";
    return cmd_nondiscounted(in, doc);
  }
  InfiniteOptions io;
  io.state_budget = state_budget();
  const ValueBracket b = solve_infinite_approx(in.graph, spec, in.start, o.epsilon, io);
  doc["value"] = rounded(b.r_under);
  doc["witness"] = lasso_json(in.graph, b.pi_under);
  doc["replay"] = rounded(r_av_periodic(spec, b.pi_under).value);
  doc["bracket"] = bracket_json(in.graph, b);
  doc["states"] = b.states;
  return kExitOk;
}

int cmd_decide(const Options& o, json& doc) {
  Loaded in = load(o);
  const RewardSpec spec = to_reward_spec(in.file);
  if (o.horizon > 0) {
    FiniteOptions fo;
    fo.state_budget = state_budget();
    const bool yes = decide_finite_value(in.graph, spec, in.start, o.horizon, o.threshold, fo);
    doc["decision"] = yes ? "yes" : "no";
    return yes ? kExitOk : kExitNo;
  }
  InfiniteOptions io;
  io.state_budget = state_budget();
  const DecisionResult r =
      decide_infinite_value(in.graph, spec, in.start, o.threshold, o.epsilon, io);
  doc["bracket"] = bracket_json(in.graph, r.bracket);
  doc["states"] = r.bracket.states;
  switch (r.decision) {
    case Decision::kYes:
      doc["decision"] = "yes";
      return kExitOk;
    case Decision::kNo:
      doc["decision"] = "no";
      return kExitNo;
    case Decision::kUnknown:
      break;
  }
  doc["decision"] = "unknown";
  return kExitUnknown;
}

int cmd_bounded(const Options& o, json& doc) {
  Loaded in = load(o);
  const RewardSpec spec = to_reward_spec(in.file);
  const auto sol = solve_bounded_memory(in.graph, spec, in.start, o.memory);
  doc["value"] = rounded(sol.value);
  doc["witness"] = lasso_json(in.graph, sol.witness);
  doc["replay"] = rounded(r_av_periodic(spec, sol.witness).value);
  doc["lassos_examined"] = sol.lassos_examined;
  return kExitOk;
}

int cmd_simulate(const Options& o, json& doc) {
  Loaded in = load(o);
  const RewardSpec spec = to_reward_spec(in.file);
  SimConfig config;
  config.trials = o.trials;
  config.seed = o.seed;
  config.horizon = o.horizon;
  if (o.generation == "poisson")
    config.generation = Generation::kPoisson;
  else if (o.generation == "deterministic")
    config.generation = Generation::kDeterministic;
  else
    throw ParseError("--generation", "expected poisson or deterministic");

  SimResult r;
  if (!o.path.empty()) {
    const Path p = validate_path(in.graph, parse_nodes(in.graph, o.path, "--path"));
    if (config.horizon == 0) config.horizon = p.length();
    r = simulate_finite_reward(in.graph, spec, p, config);
    doc["witness"] = {{"path", labels_of(in.graph, p.nodes())}};
    doc["expected"] = rounded(r_sum_finite(spec, p).value);
  } else {
    if (o.cycle.empty()) throw ParseError("--cycle", "give --path or --cycle");
    const auto upp = make_lasso(in.graph, parse_nodes(in.graph, o.prefix, "--prefix"),
                                parse_nodes(in.graph, o.cycle, "--cycle"));
    if (config.horizon == 0) config.horizon = 100 * upp.period();
    r = simulate_average_reward(in.graph, spec, upp, config);
    doc["witness"] = lasso_json(in.graph, upp);
    doc["expected"] = rounded(r_av_periodic(spec, upp).value);
  }
  doc["value"] = rounded(r.mean);
  doc["standard_error"] = rounded(r.standard_error);
  doc["trials"] = r.trials;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robot routing with decaying rewards"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "graph JSON file")->required();
    sub->add_option("--start", o.start, "start node id (default: first node)");
  };
  auto* finite = app.add_subcommand("finite", "optimal N-step reward");
  common(finite);
  finite->add_option("--horizon", o.horizon)->required()->check(CLI::PositiveNumber);
  finite->add_flag("--decay", o.decay, "use per-node decay profiles");

  auto* infinite = app.add_subcommand("infinite", "approximate optimal average reward");
  common(infinite);
  infinite->add_option("--epsilon", o.epsilon)->capture_default_str()->check(CLI::PositiveNumber);

  auto* decide = app.add_subcommand("decide", "is the optimal value at least the threshold?");
  common(decide);
  decide->add_option("--threshold", o.threshold)->required();
  decide->add_option("--epsilon", o.epsilon)->capture_default_str()->check(CLI::PositiveNumber);
  decide->add_option("--horizon", o.horizon, "finite horizon; omit for average reward");

  auto* nondiscounted = app.add_subcommand("nondiscounted", "exact average reward when gamma = 1");
  common(nondiscounted);

  auto* bounded = app.add_subcommand("bounded", "best strategy with bounded memory");
  common(bounded);
  bounded->add_option("--memory", o.memory)->capture_default_str()->check(CLI::PositiveNumber);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo reward of a path or lasso");
  common(simulate);
  simulate->add_option("--path", o.path, "finite path, e.g. abca or a,b,c,a");
  simulate->add_option("--prefix", o.prefix);
  simulate->add_option("--cycle", o.cycle);
  simulate->add_option("--horizon", o.horizon);
  simulate->add_option("--trials", o.trials)->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", o.seed)->capture_default_str();
  simulate->add_option("--generation", o.generation)->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  json doc;
  const auto started = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    CLI::App* sub = app.get_subcommands().front();
    doc["command"] = sub->get_name();
    json echo = json::object();
    for (const CLI::Option* opt : sub->get_options())
      if (opt->count() > 0 && opt->get_name() != "--help") echo[opt->get_name()] = opt->as<std::string>();
    doc["args"] = echo;
    if (sub == finite) code = cmd_finite(o, doc);
    else if (sub == infinite) code = cmd_infinite(o, doc, err);
    else if (sub == decide) code = cmd_decide(o, doc);
    else if (sub == nondiscounted) code = cmd_nondiscounted(load(o), doc);
    else if (sub == bounded) code = cmd_bounded(o, doc);
    else code = cmd_simulate(o, doc);
  } catch (const StateBudgetExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InstanceTooLargeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  const auto elapsed = std::chrono::steady_clock::now() - started;
  doc["wall_time_ms"] =
      rounded(std::chrono::duration<double, std::milli>(elapsed).count());
  out << doc.dump(2) << "\n";
  return code;
}

}  // namespace rrp::cli
