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

#include "sbmsm/env.hpp"

namespace sbmsm {

std::vector<std::pair<int, double>> consistent_states(
    const TabularRound& round, const PartialState& observed) {
  std::vector<std::pair<int, double>> out;
  double total = 0.0;
  for (int s = 0; s < static_cast<int>(round.states.size()); ++s) {
    const auto& st = round.states[s];
    bool ok = true;
    for (const auto& [v, local] : observed.observations) {
      if (st.local[v] != local) {
        ok = false;
        break;
      }
    }
    if (ok && st.prob > 0.0) {
      out.emplace_back(s, st.prob);
      total += st.prob;
    }
  }
  if (out.empty() || total <= 0.0)
    throw ValidationError("observation has zero probability: " +
                          observed.digest());
  for (auto& [s, p] : out) p /= total;
  return out;
}

double eval_objective(const Instance& instance, int t, std::uint32_t mask,
                      int state_index) {
  const auto& round = instance.tabular_round(t);
  if (state_index < 0 || state_index >= static_cast<int>(round.states.size()))
    throw UsageError("eval_objective: unknown state id " +
                     std::to_string(state_index));
  if (mask >> instance.num_items())
    throw UsageError("eval_objective: item out of range in mask");
  return round.objective(mask, state_index);
}

int sample_state(const Instance& instance, int t, RngStream& rng) {
  const auto& round = instance.tabular_round(t);
  double u = rng.next_double();
  double acc = 0.0;
  for (int s = 0; s < static_cast<int>(round.states.size()); ++s) {
    acc += round.states[s].prob;
    if (u < acc) return s;
  }
  return static_cast<int>(round.states.size()) - 1;
}

PartialState sample_extension(const Instance& instance, int t,
                              const PartialState& observed,
                              std::uint32_t target_mask, RngStream& rng) {
  if ((target_mask & observed.item_mask()) != observed.item_mask())
    throw UsageError("sample_extension: target must contain observed items");
  const auto& round = instance.tabular_round(t);
  auto posterior = consistent_states(round, observed);
  double u = rng.next_double();
  int picked = posterior.back().first;
  double acc = 0.0;
  for (const auto& [s, p] : posterior) {
    acc += p;
    if (u < acc) {
      picked = s;
      break;
    }
  }
  PartialState out = observed;
  for (int v = 0; v < instance.num_items(); ++v) {
    if (target_mask & (1u << v)) out.observations[v] = round.states[picked].local[v];
  }
  return out;
}

double exact_marginal(const Instance& instance, int t, int v,
                      const PartialState& observed) {
  instance.require_kind(ModelKind::kTabular, "exact_marginal");
  const auto& round = instance.tabular_round(t);
  const std::uint32_t mask = observed.item_mask();
  const std::uint32_t with_v = mask | (1u << v);
  double e = 0.0;
  for (const auto& [s, p] : consistent_states(round, observed))
    e += p * (round.objective(with_v, s) - round.objective(mask, s));
  return e;
}

double expected_objective(const TabularRound& round, std::uint32_t mask,
                          const PartialState& observed) {
  double e = 0.0;
  for (const auto& [s, p] : consistent_states(round, observed))
    e += p * round.objective(mask, s);
  return e;
}

}  // namespace sbmsm
