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

#ifndef SBMSM_TESTS_TEST_UTIL_HPP_
#define SBMSM_TESTS_TEST_UTIL_HPP_

#include <memory>
#include <utility>
#include <vector>

#include "sbmsm/instance.hpp"
#include "sbmsm/submodular.hpp"

namespace sbmsm::test {

// One tabular round described by parallel per-state arrays: probability,
// local-state vector, and additive per-item weights defining
// f(S, state) = sum of weights[state][v] over v in S.
struct RoundSpec {
  std::vector<double> probs;
  std::vector<std::vector<int>> locals;     // [state][item]
  std::vector<std::vector<double>> weights; // [state][item]
};

inline TabularRound make_round(const RoundSpec& spec) {
  TabularRound round;
  auto weights =
      std::make_shared<std::vector<std::vector<double>>>(spec.weights);
  for (std::size_t s = 0; s < spec.probs.size(); ++s) {
    TabularState st;
    st.prob = spec.probs[s];
    st.local = spec.locals[s];
    round.states.push_back(std::move(st));
  }
  round.objective = [weights](std::uint32_t mask, int s) {
    double total = 0.0;
    const auto& w = (*weights)[s];
    for (std::size_t v = 0; v < w.size(); ++v)
      if (mask & (1u << v)) total += w[v];
    return total;
  };
  return round;
}

inline Instance make_tabular(int B, std::vector<RoundSpec> specs,
                             double lambda, double capital_lambda) {
  InstanceHeader header;
  header.horizon = static_cast<int>(specs.size());
  header.budget = B;
  header.num_items = static_cast<int>(specs[0].locals[0].size());
  header.lambda = lambda;
  header.capital_lambda = capital_lambda;
  std::vector<TabularRound> rounds;
  for (const auto& spec : specs) rounds.push_back(make_round(spec));
  return make_tabular_instance(std::move(header), std::move(rounds));
}

// Single-round, single-state deterministic instance with additive weights.
inline Instance deterministic_additive(std::vector<double> weights, int B) {
  const int n = static_cast<int>(weights.size());
  double top = 0.0;
  for (double w : weights) top = std::max(top, w);
  RoundSpec spec;
  spec.probs = {1.0};
  spec.locals = {std::vector<int>(n, 0)};
  spec.weights = {std::move(weights)};
  return make_tabular(B, {std::move(spec)}, top, top);
}

// Probing instance with one additive round per (p, w) pair.
inline Instance probing_additive(
    int B, std::vector<std::pair<std::vector<double>, std::vector<double>>>
               rounds_pw) {
  InstanceHeader header;
  header.horizon = static_cast<int>(rounds_pw.size());
  header.budget = B;
  header.num_items = static_cast<int>(rounds_pw[0].first.size());
  header.capital_lambda = 0.0;
  header.lambda = 0.0;
  std::vector<ProbingRound> rounds;
  for (auto& [p, w] : rounds_pw) {
    for (std::size_t v = 0; v < p.size(); ++v) {
      header.capital_lambda = std::max(header.capital_lambda, w[v]);
      header.lambda = std::max(header.lambda, p[v] * w[v]);
    }
    ProbingRound round;
    round.activation = std::move(p);
    round.g = make_additive(std::move(w));
    rounds.push_back(std::move(round));
  }
  return make_probing_instance(std::move(header), std::move(rounds));
}

}  // namespace sbmsm::test

#endif  // SBMSM_TESTS_TEST_UTIL_HPP_
