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

#ifndef SBMSM_INFLUENCE_HPP_
#define SBMSM_INFLUENCE_HPP_

#include <cstdint>
#include <vector>

#include "sbmsm/instance.hpp"
#include "sbmsm/rng.hpp"

namespace sbmsm {

// Per-edge revelation status within one round. Revealed edges are exactly the
// ones examined by past diffusions this round; the rest are sampled on
// demand. Discarded at round end (rounds are independent).
struct EdgeRevelation {
  enum Status : std::int8_t { kUnrevealed = -1, kDead = 0, kLive = 1 };
  std::vector<std::int8_t> status;
  int round = 1;

  static EdgeRevelation fresh(const InfluenceGraph& graph, int t) {
    EdgeRevelation r;
    r.status.assign(graph.edges.size(), kUnrevealed);
    r.round = t;
    return r;
  }
};

// Full independent draw: each edge live with probability p_t(u,v).
std::vector<std::uint8_t> sample_live_edges(const InfluenceGraph& graph, int t,
                                            RngStream& rng);

// BFS from seed over live edges restricted to V minus already-active nodes.
// Unrevealed edges on the frontier are sampled on demand and recorded in
// revelation. Returns the newly activated set (includes seed).
std::vector<int> diffuse(const InfluenceGraph& graph, int t,
                         EdgeRevelation& revelation,
                         const std::vector<std::uint8_t>& already_active,
                         int seed, RngStream& rng);

// Total round-t weight of the union of activated nodes.
double influence_eval(const InfluenceGraph& graph, int t,
                      const std::vector<std::uint8_t>& activated);

// Enumerates all 2^|E| live-edge patterns as global states; the local state
// of node v is a dictionary id of its reachability set under the pattern.
// Guard: |E| <= 16 and n <= 16.
Instance influence_to_tabular(const Instance& instance);

}  // namespace sbmsm

#endif  // SBMSM_INFLUENCE_HPP_
