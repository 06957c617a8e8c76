// Copyright 2025 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sbmsm/io.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

namespace sbmsm {

using nlohmann::json;

namespace {

SubmodularSpec submodular_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "additive")
    return make_additive(j.at("weights").get<std::vector<double>>());
  if (type == "budget_additive")
    return make_budget_additive(j.at("weights").get<std::vector<double>>(),
                                j.at("cap").get<double>());
  if (type == "coverage")
    return make_coverage(
        j.at("element_weights").get<std::vector<double>>(),
        j.at("covers").get<std::vector<std::vector<int>>>());
  throw ValidationError("unknown submodular family: " + type);
}

json submodular_to_json(const SubmodularSpec& g) {
  json j;
  switch (g.family) {
    case SubmodularSpec::Family::kAdditive:
      j["type"] = "additive";
      j["weights"] = g.weights;
      break;
    case SubmodularSpec::Family::kBudgetAdditive:
      j["type"] = "budget_additive";
      j["weights"] = g.weights;
      j["cap"] = g.cap;
      break;
    case SubmodularSpec::Family::kCoverage:
      j["type"] = "coverage";
      j["element_weights"] = g.element_weights;
      j["covers"] = g.covers;
      break;
  }
  return j;
}

TabularRound tabular_round_from_json(const json& j, int n, int round_index) {
  TabularRound round;
  for (const auto& js : j.at("states")) {
    TabularState st;
    st.prob = js.at("prob").get<double>();
    st.local = js.at("local").get<std::vector<int>>();
    round.states.push_back(std::move(st));
  }
  const int num_states = static_cast<int>(round.states.size());
  if (n > 16) throw GuardError("tabular round: n > 16 tables unsupported");

  auto table = std::make_shared<std::vector<std::vector<double>>>(
      num_states, std::vector<double>(1u << n, 0.0));
  const json& f = j.at("f");
  for (auto it = f.begin(); it != f.end(); ++it) {
    const std::string& key = it.key();
    auto at = key.find('@');
    if (at == std::string::npos)
      throw ValidationError("round " + std::to_string(round_index) +
                            ": malformed f key '" + key + "'");
    unsigned long mask = std::stoul(key.substr(0, at));
    int s = std::stoi(key.substr(at + 1));
    if (mask >= (1u << n) || s < 0 || s >= num_states)
      throw ValidationError("round " + std::to_string(round_index) +
                            ": f key out of range '" + key + "'");
    (*table)[s][mask] = it.value().get<double>();
  }
  // Omitted keys default to 0 only for the empty set.
  for (int s = 0; s < num_states; ++s) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::string key = std::to_string(mask) + "@" + std::to_string(s);
      if (!f.contains(key))
        throw ValidationError("round " + std::to_string(round_index) +
                              ": missing f entry for non-empty set '" + key +
                              "'");
    }
  }
  round.objective = [table](std::uint32_t mask, int s) {
    return (*table)[s][mask];
  };
  return round;
}

json tabular_round_to_json(const TabularRound& round, int n) {
  if (n > 16) throw GuardError("tabular round: n > 16 tables unsupported");
  json j;
  j["states"] = json::array();
  for (const auto& st : round.states)
    j["states"].push_back({{"prob", st.prob}, {"local", st.local}});
  json f = json::object();
  for (int s = 0; s < static_cast<int>(round.states.size()); ++s) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
      f[std::to_string(mask) + "@" + std::to_string(s)] =
          round.objective(mask, s);
  }
  j["f"] = std::move(f);
  return j;
}

InfluenceGraph graph_from_json(const json& j) {
  InfluenceGraph g;
  g.num_nodes = j.at("nodes").get<int>();
  for (const auto& e : j.at("edges"))
    g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  g.edge_prob = j.at("p").get<std::vector<std::vector<double>>>();
  g.node_weight = j.at("w").get<std::vector<std::vector<double>>>();
  g.finalize();
  return g;
}

json graph_to_json(const InfluenceGraph& g) {
  json j;
  j["nodes"] = g.num_nodes;
  j["edges"] = json::array();
  for (const auto& [u, v] : g.edges) j["edges"].push_back({u, v});
  j["p"] = g.edge_prob;
  j["w"] = g.node_weight;
  return j;
}

}  // namespace

Instance instance_from_json(const json& j) {
  InstanceHeader header;
  header.kind = model_kind_from_string(j.at("kind").get<std::string>());
  header.horizon = j.at("T").get<int>();
  header.budget = j.at("B").get<int>();
  header.lambda = j.at("lambda").get<double>();
  header.capital_lambda = j.at("capital_lambda").get<double>();
  header.item_names = j.at("items").get<std::vector<std::string>>();
  header.num_items = static_cast<int>(header.item_names.size());

  switch (header.kind) {
    case ModelKind::kTabular: {
      std::vector<TabularRound> rounds;
      int index = 1;
      for (const auto& jr : j.at("rounds"))
        rounds.push_back(
            tabular_round_from_json(jr, header.num_items, index++));
      return make_tabular_instance(std::move(header), std::move(rounds));
    }
    case ModelKind::kProbing: {
      std::vector<ProbingRound> rounds;
      for (const auto& jr : j.at("rounds")) {
        ProbingRound round;
        round.activation = jr.at("p").get<std::vector<double>>();
        round.g = submodular_from_json(jr.at("g"));
        rounds.push_back(std::move(round));
      }
      return make_probing_instance(std::move(header), std::move(rounds));
    }
    case ModelKind::kInfluence:
      return make_influence_instance(std::move(header),
                                     graph_from_json(j.at("graph")));
  }
  throw ValidationError("unknown instance kind");
}

json instance_to_json(const Instance& instance) {
  json j;
  j["kind"] = to_string(instance.kind());
  j["T"] = instance.horizon();
  j["B"] = instance.budget();
  j["lambda"] = instance.header.lambda;
  j["capital_lambda"] = instance.header.capital_lambda;
  std::vector<std::string> names = instance.header.item_names;
  if (names.empty()) {
    for (int v = 0; v < instance.num_items(); ++v)
      names.push_back("v" + std::to_string(v));
  }
  j["items"] = names;

  switch (instance.kind()) {
    case ModelKind::kTabular: {
      j["rounds"] = json::array();
      for (int t = 1; t <= instance.horizon(); ++t)
        j["rounds"].push_back(tabular_round_to_json(instance.tabular_round(t),
                                                    instance.num_items()));
      break;
    }
    case ModelKind::kProbing: {
      j["rounds"] = json::array();
      for (int t = 1; t <= instance.horizon(); ++t) {
        const auto& round = instance.probing_round(t);
        j["rounds"].push_back(
            {{"p", round.activation}, {"g", submodular_to_json(round.g)}});
      }
      break;
    }
    case ModelKind::kInfluence:
      j["graph"] = graph_to_json(instance.graph);
      break;
  }
  return j;
}

Instance load_instance(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid instance file: ") + e.what());
  }
}

void save_instance(const Instance& instance, const std::string& path) {
  write_file(path, instance_to_json(instance).dump(2) + "\n");
}

InfluenceGraph load_edge_list(const std::string& path, int horizon) {
  InfluenceGraph g;
  std::istringstream in(read_file(path));
  std::string line;
  int max_node = -1;
  std::vector<std::vector<double>> per_edge_probs;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int u, v;
    if (!(row >> u >> v))
      throw ValidationError("edge list: malformed line '" + line + "'");
    std::vector<double> probs;
    double p;
    while (row >> p) probs.push_back(p);
    if (static_cast<int>(probs.size()) != horizon)
      throw ValidationError("edge list: expected " + std::to_string(horizon) +
                            " probabilities on line '" + line + "'");
    g.edges.emplace_back(u, v);
    per_edge_probs.push_back(std::move(probs));
    max_node = std::max(max_node, std::max(u, v));
  }
  g.num_nodes = max_node + 1;
  g.edge_prob.assign(horizon, std::vector<double>(g.edges.size()));
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    for (int t = 0; t < horizon; ++t) g.edge_prob[t][e] = per_edge_probs[e][t];
  g.node_weight.assign(horizon, std::vector<double>(g.num_nodes, 1.0));
  g.finalize();
  return g;
}

json policy_to_json(const ExactPolicy& policy) {
  json j;
  j["T"] = policy.table.horizon;
  j["B"] = policy.table.budget;
  j["R"] = policy.table.R;
  j["actions"] = policy.actions;
  return j;
}

ExactPolicy policy_from_json(const json& j) {
  ExactPolicy policy;
  policy.table.horizon = j.at("T").get<int>();
  policy.table.budget = j.at("B").get<int>();
  policy.table.R = j.at("R").get<std::vector<std::vector<double>>>();
  policy.actions = j.at("actions").get<std::map<std::string, int>>();
  return policy;
}

json value_estimate_to_json(const ValueEstimate& est) {
  return {{"mean", est.mean},
          {"half_width", est.half_width},
          {"rollouts", est.rollouts},
          {"seed", est.seed},
          {"method", est.method}};
}

json gap_report_to_json(const GapReport& report) {
  return {{"T", report.T},
          {"sigma_partial_closed_form", report.sigma_partial_closed_form},
          {"sigma_adaptive_estimate",
           value_estimate_to_json(report.sigma_adaptive_estimate)},
          {"ratio", report.ratio},
          {"gap_limit", report.limit}};
}

std::string gap_report_to_csv(const GapReport& report) {
  std::ostringstream out;
  out << "T,closed_form,estimate,ratio\n";
  out << report.T << ',' << report.sigma_partial_closed_form << ','
      << report.sigma_adaptive_estimate.mean << ',' << report.ratio << '\n';
  return out.str();
}

std::string trace_to_json_lines(const GreedyTrace& trace) {
  std::ostringstream out;
  for (const auto& rec : trace.records) {
    json j = {{"t", rec.t},
              {"step", rec.step},
              {"item", rec.item},
              {"estimate", rec.estimate},
              {"observation_digest", rec.observation_digest}};
    out << j.dump() << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + path);
  out << content;
}

}  // namespace sbmsm
