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

#ifndef SBMSM_INSTANCE_HPP_
#define SBMSM_INSTANCE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sbmsm/errors.hpp"
#include "sbmsm/submodular.hpp"

namespace sbmsm {

enum class ModelKind { kTabular, kProbing, kInfluence };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

// Instance-level constants. T rounds, a single budget B shared across rounds,
// n items, and the boundedness constants: capital_lambda (Lambda) caps every
// single-item marginal increment, lambda floors some single-item expected
// value. Instances are immutable after load and safe to share across threads.
struct InstanceHeader {
  int horizon = 0;         // T
  int budget = 0;          // B
  int num_items = 0;       // n
  double lambda = 0.0;
  double capital_lambda = 0.0;
  ModelKind kind = ModelKind::kTabular;
  std::vector<std::string> item_names;  // size n (defaults v0..v{n-1})
};

// The order-irrelevant observation made at one round: item -> local state id.
// std::map keeps the canonical (sorted by item id) form, so equality and the
// digest are order-independent.
struct PartialState {
  std::map<int, int> observations;
  int round = 1;

  bool observed(int v) const { return observations.count(v) != 0; }
  std::uint32_t item_mask() const {
    std::uint32_t m = 0;
    for (const auto& [v, s] : observations) m |= (1u << v);
    return m;
  }
  int size() const { return static_cast<int>(observations.size()); }

  // Canonical digest, e.g. "0:1,2:0" ("-" when empty).
  std::string digest() const;

  bool operator==(const PartialState& other) const {
    return round == other.round && observations == other.observations;
  }
};

// One enumerated global state of a tabular round: the per-item local-state
// vector and its probability.
struct TabularState {
  std::vector<int> local;
  double prob = 0.0;
};

// Fully enumerated round model. The objective is a function of
// (item bitmask, state index) so large-but-structured tables (e.g. f(S)=|S|)
// need not be materialized; JSON-loaded rounds capture a dense table.
struct TabularRound {
  std::vector<TabularState> states;
  std::function<double(std::uint32_t, int)> objective;
};

// MR-BSS round: independent binary activations plus a monotone submodular
// function evaluated on the active selected items.
struct ProbingRound {
  std::vector<double> activation;  // p_t(v)
  SubmodularSpec g;
};

// MR-IM-IC model: one directed graph with per-round edge probabilities and
// node weights.
struct InfluenceGraph {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<double>> edge_prob;    // [t][edge]
  std::vector<std::vector<double>> node_weight;  // [t][node]

  // Out-edge indices per node; built by finalize().
  std::vector<std::vector<int>> out_edges;
  void finalize();
};

struct Instance {
  InstanceHeader header;
  std::vector<TabularRound> tabular;  // size T when kind == kTabular
  std::vector<ProbingRound> probing;  // size T when kind == kProbing
  InfluenceGraph graph;               // kind == kInfluence

  int horizon() const { return header.horizon; }
  int budget() const { return header.budget; }
  int num_items() const { return header.num_items; }
  ModelKind kind() const { return header.kind; }

  const TabularRound& tabular_round(int t) const;  // t in [1..T]
  const ProbingRound& probing_round(int t) const;

  void require_kind(ModelKind k, const char* op) const;
};

Instance make_tabular_instance(InstanceHeader header,
                               std::vector<TabularRound> rounds);
Instance make_probing_instance(InstanceHeader header,
                               std::vector<ProbingRound> rounds);
Instance make_influence_instance(InstanceHeader header, InfluenceGraph graph);

// Full model validation. Throws ValidationError naming the first offending
// item/state/subset triple. For tabular rounds this exhaustively checks
// probability normalization, f(empty)=0, monotonicity in S, and the Lambda
// bound (guarded to n <= 16).
void validate_instance(const Instance& instance);

}  // namespace sbmsm

#endif  // SBMSM_INSTANCE_HPP_
