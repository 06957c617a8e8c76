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

#include "sbmsm/probing.hpp"

#include <memory>

namespace sbmsm {

double probing_eval(const ProbingRound& round, const std::vector<int>& items,
                    const std::vector<std::uint8_t>& phi) {
  std::vector<int> active;
  for (int v : items) {
    if (phi.at(v)) active.push_back(v);
  }
  return round.g.eval(active);
}

Instance probing_to_tabular(const Instance& instance) {
  instance.require_kind(ModelKind::kProbing, "probing_to_tabular");
  const int n = instance.num_items();
  if (n > 20)
    throw GuardError("probing_to_tabular: n > 20 (2^n states do not fit)");

  InstanceHeader header = instance.header;
  header.kind = ModelKind::kTabular;

  std::vector<TabularRound> rounds;
  for (int t = 1; t <= instance.horizon(); ++t) {
    const ProbingRound& src = instance.probing_round(t);
    TabularRound round;
    // Zero-probability activation vectors are dropped so |H| stays the count
    // of realizable states.
    auto masks = std::make_shared<std::vector<std::uint32_t>>();
    for (std::uint32_t act = 0; act < (1u << n); ++act) {
      double prob = 1.0;
      for (int v = 0; v < n; ++v) {
        double p = src.activation[v];
        prob *= (act & (1u << v)) ? p : 1.0 - p;
      }
      if (prob <= 0.0) continue;
      TabularState st;
      st.prob = prob;
      st.local.resize(n);
      for (int v = 0; v < n; ++v) st.local[v] = (act >> v) & 1;
      round.states.push_back(std::move(st));
      masks->push_back(act);
    }
    const SubmodularSpec g = src.g;
    round.objective = [g, masks, n](std::uint32_t mask, int s) {
      std::vector<int> active;
      const std::uint32_t act = (*masks)[s];
      for (int v = 0; v < n; ++v) {
        if ((mask & (1u << v)) && (act & (1u << v))) active.push_back(v);
      }
      return g.eval(active);
    };
    rounds.push_back(std::move(round));
  }
  return make_tabular_instance(std::move(header), std::move(rounds));
}

}  // namespace sbmsm
