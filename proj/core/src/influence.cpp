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

#include "sbmsm/influence.hpp"

#include <map>
#include <memory>

namespace sbmsm {

namespace {

// Reachable-set bitmask of seed in the live-edge pattern (full graph).
std::uint32_t reach_mask(const InfluenceGraph& graph, std::uint32_t live,
                         int seed) {
  std::uint32_t reached = 1u << seed;
  std::vector<int> queue = {seed};
  while (!queue.empty()) {
    int u = queue.back();
    queue.pop_back();
    for (int e : graph.out_edges[u]) {
      if (!(live & (1u << e))) continue;
      int v = graph.edges[e].second;
      if (reached & (1u << v)) continue;
      reached |= (1u << v);
      queue.push_back(v);
    }
  }
  return reached;
}

}  // namespace

std::vector<std::uint8_t> sample_live_edges(const InfluenceGraph& graph, int t,
                                            RngStream& rng) {
  std::vector<std::uint8_t> live(graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e)
    live[e] = rng.bernoulli(graph.edge_prob[t - 1][e]) ? 1 : 0;
  return live;
}

std::vector<int> diffuse(const InfluenceGraph& graph, int t,
                         EdgeRevelation& revelation,
                         const std::vector<std::uint8_t>& already_active,
                         int seed, RngStream& rng) {
  if (seed < 0 || seed >= graph.num_nodes)
    throw UsageError("diffuse: seed out of range");
  if (already_active[seed]) throw UsageError("diffuse: seed already active");

  std::vector<std::uint8_t> reached(graph.num_nodes, 0);
  reached[seed] = 1;
  std::vector<int> queue = {seed};
  std::vector<int> activated = {seed};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int e : graph.out_edges[u]) {
      int v = graph.edges[e].second;
      // The diffusion runs on G[V \ already-active]; edges into active nodes
      // are never examined.
      if (already_active[v] || reached[v]) continue;
      if (revelation.status[e] == EdgeRevelation::kUnrevealed) {
        revelation.status[e] = rng.bernoulli(graph.edge_prob[t - 1][e])
                                   ? EdgeRevelation::kLive
                                   : EdgeRevelation::kDead;
      }
      if (revelation.status[e] != EdgeRevelation::kLive) continue;
      reached[v] = 1;
      queue.push_back(v);
      activated.push_back(v);
    }
  }
  return activated;
}

double influence_eval(const InfluenceGraph& graph, int t,
                      const std::vector<std::uint8_t>& activated) {
  double total = 0.0;
  for (int v = 0; v < graph.num_nodes; ++v)
    if (activated[v]) total += graph.node_weight[t - 1][v];
  return total;
}

Instance influence_to_tabular(const Instance& instance) {
  instance.require_kind(ModelKind::kInfluence, "influence_to_tabular");
  const InfluenceGraph& graph = instance.graph;
  const int n = graph.num_nodes;
  const int m = static_cast<int>(graph.edges.size());
  if (m > 16 || n > 16)
    throw GuardError("influence_to_tabular: requires |E| <= 16 and n <= 16");

  InstanceHeader header = instance.header;
  header.kind = ModelKind::kTabular;

  std::vector<TabularRound> rounds;
  for (int t = 1; t <= instance.horizon(); ++t) {
    TabularRound round;
    // Per-round dictionary: reachability-set bitmask -> local state id.
    std::map<std::uint32_t, int> reach_ids;
    auto reach_of = std::make_shared<std::vector<std::vector<std::uint32_t>>>();
    const std::vector<double> weights = graph.node_weight[t - 1];
    for (std::uint32_t live = 0; live < (1u << m); ++live) {
      double prob = 1.0;
      for (int e = 0; e < m; ++e) {
        double p = graph.edge_prob[t - 1][e];
        prob *= (live & (1u << e)) ? p : 1.0 - p;
      }
      if (prob <= 0.0) continue;
      TabularState st;
      st.prob = prob;
      st.local.resize(n);
      std::vector<std::uint32_t> reach(n);
      for (int v = 0; v < n; ++v) {
        reach[v] = reach_mask(graph, live, v);
        auto [it, _] = reach_ids.insert({reach[v], static_cast<int>(reach_ids.size())});
        st.local[v] = it->second;
      }
      round.states.push_back(std::move(st));
      reach_of->push_back(std::move(reach));
    }
    // The union of sequentially restricted diffusions from a seed set equals
    // plain live-edge reachability from the set, so f depends only on S.
    round.objective = [reach_of, weights, n](std::uint32_t mask, int s) {
      std::uint32_t covered = 0;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) covered |= (*reach_of)[s][v];
      double total = 0.0;
      for (int v = 0; v < n; ++v)
        if (covered & (1u << v)) total += weights[v];
      return total;
    };
    rounds.push_back(std::move(round));
  }
  return make_tabular_instance(std::move(header), std::move(rounds));
}

}  // namespace sbmsm
