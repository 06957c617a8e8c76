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

#ifndef SBMSM_ENV_HPP_
#define SBMSM_ENV_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "sbmsm/instance.hpp"
#include "sbmsm/rng.hpp"

namespace sbmsm {

// States of a tabular round consistent with the observation, with their
// renormalized conditional probabilities. Conditioning is filtering plus
// renormalization: a global state is consistent iff it agrees with every
// observed per-item projection. Throws ValidationError if the observation has
// zero probability.
std::vector<std::pair<int, double>> consistent_states(
    const TabularRound& round, const PartialState& observed);

// f_t(S, eta) on a tabular instance; S is an item bitmask, eta a state index.
double eval_objective(const Instance& instance, int t, std::uint32_t mask,
                      int state_index);

// Draws a global state index from P_t.
int sample_state(const Instance& instance, int t, RngStream& rng);

// Extends an observation to cover target_mask, drawing the newly observed
// local states from P_t conditioned on the observation.
PartialState sample_extension(const Instance& instance, int t,
                              const PartialState& observed,
                              std::uint32_t target_mask, RngStream& rng);

// Exact conditional expected increment Delta_t(v | <S>) on a tabular
// instance, where S is the observed item set. Zero when v is already
// observed.
double exact_marginal(const Instance& instance, int t, int v,
                      const PartialState& observed);

// E[f_t(S, eta) | <S>] over states consistent with the observation.
double expected_objective(const TabularRound& round, std::uint32_t mask,
                          const PartialState& observed);

}  // namespace sbmsm

#endif  // SBMSM_ENV_HPP_
