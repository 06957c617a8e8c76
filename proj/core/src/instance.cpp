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

#include "sbmsm/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace sbmsm {

namespace {

constexpr double kTol = 1e-9;

void validate_header(const InstanceHeader& h) {
  if (h.horizon < 1) throw ValidationError("header: T must be >= 1");
  if (h.num_items < 1) throw ValidationError("header: n must be >= 1");
  if (h.budget < 0 ||
      static_cast<long long>(h.budget) >=
          static_cast<long long>(h.num_items) * h.horizon)
    throw ValidationError("header: budget must satisfy 0 <= B < n*T");
  if (h.lambda <= 0.0 || h.capital_lambda <= 0.0)
    throw ValidationError("header: lambda and capital_lambda must be > 0");
  if (h.lambda > h.capital_lambda + kTol)
    throw ValidationError("header: lambda must not exceed capital_lambda");
  if (!h.item_names.empty() &&
      static_cast<int>(h.item_names.size()) != h.num_items)
    throw ValidationError("header: item_names size differs from n");
}

void validate_tabular_round(const InstanceHeader& h, const TabularRound& round,
                            int t) {
  const int n = h.num_items;
  if (n > 16)
    throw GuardError("tabular validation: n > 16 is not enumerable");
  if (round.states.empty())
    throw ValidationError("round " + std::to_string(t) + ": no states");
  double total = 0.0;
  for (std::size_t s = 0; s < round.states.size(); ++s) {
    const auto& st = round.states[s];
    if (st.prob < 0.0)
      throw ValidationError("round " + std::to_string(t) + ", state " +
                            std::to_string(s) + ": negative probability");
    if (static_cast<int>(st.local.size()) != n)
      throw ValidationError("round " + std::to_string(t) + ", state " +
                            std::to_string(s) + ": local vector size != n");
    total += st.prob;
  }
  if (std::abs(total - 1.0) > kTol)
    throw ValidationError("round " + std::to_string(t) +
                          ": state probabilities sum to " +
                          std::to_string(total) + ", expected 1");

  const std::uint32_t full = (n >= 32) ? 0xffffffffu : ((1u << n) - 1);
  for (int s = 0; s < static_cast<int>(round.states.size()); ++s) {
    if (std::abs(round.objective(0u, s)) > kTol)
      throw ValidationError("round " + std::to_string(t) + ", state " +
                            std::to_string(s) +
                            ": f(empty set) != 0 (normalization)");
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      const double base = round.objective(mask, s);
      if (base < -kTol)
        throw ValidationError("round " + std::to_string(t) +
                              ": negative objective at mask " +
                              std::to_string(mask) + ", state " +
                              std::to_string(s));
      for (int v = 0; v < n; ++v) {
        if (mask & (1u << v)) continue;
        const double inc = round.objective(mask | (1u << v), s) - base;
        if (inc < -kTol) {
          std::ostringstream msg;
          msg << "round " << t << ": monotonicity violated at S=mask("
              << mask << "), S'=S+{item " << v << "}, state " << s;
          throw ValidationError(msg.str());
        }
        if (inc > h.capital_lambda + kTol) {
          std::ostringstream msg;
          msg << "round " << t << ": increment " << inc << " of item " << v
              << " at mask(" << mask << "), state " << s
              << " exceeds capital_lambda=" << h.capital_lambda;
          throw ValidationError(msg.str());
        }
      }
    }
  }
}

void validate_probing_round(const InstanceHeader& h, const ProbingRound& round,
                            int t) {
  if (static_cast<int>(round.activation.size()) != h.num_items)
    throw ValidationError("round " + std::to_string(t) +
                          ": activation vector size != n");
  for (int v = 0; v < h.num_items; ++v) {
    double p = round.activation[v];
    if (p < 0.0 || p > 1.0)
      throw ValidationError("round " + std::to_string(t) + ", item " +
                            std::to_string(v) +
                            ": activation probability outside [0,1]");
  }
  if (round.g.num_items() != h.num_items)
    throw ValidationError("round " + std::to_string(t) +
                          ": submodular spec covers wrong item count");
  for (double w : round.g.weights)
    if (w < 0.0)
      throw ValidationError("round " + std::to_string(t) +
                            ": negative item weight");
  for (double w : round.g.element_weights)
    if (w < 0.0)
      throw ValidationError("round " + std::to_string(t) +
                            ": negative element weight");
  if (round.g.max_increment_bound() > h.capital_lambda + kTol)
    throw ValidationError("round " + std::to_string(t) +
                          ": singleton value exceeds capital_lambda");
}

void validate_influence(const InstanceHeader& h, const InfluenceGraph& g) {
  if (g.num_nodes != h.num_items)
    throw ValidationError("influence: node count differs from n");
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || u >= g.num_nodes || v < 0 || v >= g.num_nodes)
      throw ValidationError("influence: edge endpoint out of range");
    if (!seen.insert({u, v}).second)
      throw ValidationError("influence: duplicate edge (" +
                            std::to_string(u) + "," + std::to_string(v) + ")");
  }
  if (static_cast<int>(g.edge_prob.size()) != h.horizon ||
      static_cast<int>(g.node_weight.size()) != h.horizon)
    throw ValidationError("influence: per-round arrays must have T entries");
  double max_w = 0.0, max_single = 0.0;
  for (int t = 0; t < h.horizon; ++t) {
    if (g.edge_prob[t].size() != g.edges.size())
      throw ValidationError("influence: edge probability row size mismatch");
    if (static_cast<int>(g.node_weight[t].size()) != g.num_nodes)
      throw ValidationError("influence: node weight row size mismatch");
    for (double p : g.edge_prob[t])
      if (p < 0.0 || p > 1.0)
        throw ValidationError("influence: edge probability outside [0,1]");
    for (double w : g.node_weight[t]) {
      if (w < 0.0) throw ValidationError("influence: negative node weight");
      max_w = std::max(max_w, w);
      max_single = std::max(max_single, w);
    }
  }
  // Appendix-style constants: some w_t(v) >= lambda and Lambda >= n*max w.
  if (max_single + kTol < h.lambda)
    throw ValidationError("influence: no node weight reaches lambda");
  if (h.capital_lambda + kTol < g.num_nodes * max_w)
    throw ValidationError("influence: capital_lambda below n * max weight");
}

// Checks that some single item at some round has expected value >= lambda.
void validate_lambda_witness(const Instance& inst) {
  const auto& h = inst.header;
  double best = 0.0;
  if (h.kind == ModelKind::kTabular) {
    for (int t = 1; t <= h.horizon; ++t) {
      const auto& round = inst.tabular_round(t);
      for (int v = 0; v < h.num_items; ++v) {
        double e = 0.0;
        for (int s = 0; s < static_cast<int>(round.states.size()); ++s)
          e += round.states[s].prob * round.objective(1u << v, s);
        best = std::max(best, e);
      }
    }
  } else if (h.kind == ModelKind::kProbing) {
    for (int t = 1; t <= h.horizon; ++t) {
      const auto& round = inst.probing_round(t);
      for (int v = 0; v < h.num_items; ++v)
        best = std::max(best,
                        round.activation[v] * round.g.singleton_value(v));
    }
  } else {
    return;  // influence handled by the weight check above
  }
  if (best + kTol < h.lambda)
    throw ValidationError(
        "lambda: no single-item expected value reaches lambda (max is " +
        std::to_string(best) + ")");
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTabular: return "tabular";
    case ModelKind::kProbing: return "probing";
    case ModelKind::kInfluence: return "influence";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "tabular") return ModelKind::kTabular;
  if (s == "probing") return ModelKind::kProbing;
  if (s == "influence") return ModelKind::kInfluence;
  throw ValidationError("unknown model kind: " + s);
}

std::string PartialState::digest() const {
  if (observations.empty()) return "-";
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, s] : observations) {
    if (!first) out << ',';
    out << v << ':' << s;
    first = false;
  }
  return out.str();
}

void InfluenceGraph::finalize() {
  out_edges.assign(num_nodes, {});
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    out_edges[edges[e].first].push_back(e);
}

const TabularRound& Instance::tabular_round(int t) const {
  require_kind(ModelKind::kTabular, "tabular_round");
  if (t < 1 || t > header.horizon)
    throw UsageError("round index out of range: " + std::to_string(t));
  return tabular[t - 1];
}

const ProbingRound& Instance::probing_round(int t) const {
  require_kind(ModelKind::kProbing, "probing_round");
  if (t < 1 || t > header.horizon)
    throw UsageError("round index out of range: " + std::to_string(t));
  return probing[t - 1];
}

void Instance::require_kind(ModelKind k, const char* op) const {
  if (header.kind != k)
    throw UsageError(std::string(op) + ": unsupported on " +
                     to_string(header.kind) + " instances");
}

Instance make_tabular_instance(InstanceHeader header,
                               std::vector<TabularRound> rounds) {
  header.kind = ModelKind::kTabular;
  validate_header(header);
  Instance inst;
  inst.header = std::move(header);
  inst.tabular = std::move(rounds);
  if (static_cast<int>(inst.tabular.size()) != inst.header.horizon)
    throw ValidationError("tabular instance: round count differs from T");
  return inst;
}

Instance make_probing_instance(InstanceHeader header,
                               std::vector<ProbingRound> rounds) {
  header.kind = ModelKind::kProbing;
  validate_header(header);
  Instance inst;
  inst.header = std::move(header);
  inst.probing = std::move(rounds);
  if (static_cast<int>(inst.probing.size()) != inst.header.horizon)
    throw ValidationError("probing instance: round count differs from T");
  return inst;
}

Instance make_influence_instance(InstanceHeader header, InfluenceGraph graph) {
  header.kind = ModelKind::kInfluence;
  validate_header(header);
  Instance inst;
  inst.header = std::move(header);
  inst.graph = std::move(graph);
  inst.graph.finalize();
  return inst;
}

void validate_instance(const Instance& inst) {
  validate_header(inst.header);
  switch (inst.kind()) {
    case ModelKind::kTabular:
      if (static_cast<int>(inst.tabular.size()) != inst.horizon())
        throw ValidationError("tabular instance: round count differs from T");
      for (int t = 1; t <= inst.horizon(); ++t)
        validate_tabular_round(inst.header, inst.tabular[t - 1], t);
      break;
    case ModelKind::kProbing:
      if (static_cast<int>(inst.probing.size()) != inst.horizon())
        throw ValidationError("probing instance: round count differs from T");
      for (int t = 1; t <= inst.horizon(); ++t)
        validate_probing_round(inst.header, inst.probing[t - 1], t);
      break;
    case ModelKind::kInfluence:
      validate_influence(inst.header, inst.graph);
      break;
  }
  validate_lambda_witness(inst);
}

}  // namespace sbmsm
