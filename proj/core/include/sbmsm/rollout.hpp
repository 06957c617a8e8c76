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

#ifndef SBMSM_ROLLOUT_HPP_
#define SBMSM_ROLLOUT_HPP_

#include <memory>
#include <string>
#include <vector>

#include "sbmsm/instance.hpp"
#include "sbmsm/rng.hpp"

namespace sbmsm {

// Live access to one round of one rollout. Selecting an item commits the
// selection, reveals its observation (and, for influence, its diffusion) and
// returns the realized increment of f_t. sample_increment draws a conditional
// increment sample without committing anything; this is the raw sample the
// Monte-Carlo oracles average. exact_increment is the exact conditional
// expectation, available only where conditioning is tractable.
class RoundRollout {
 public:
  virtual ~RoundRollout() = default;

  virtual int round() const = 0;
  virtual int num_items() const = 0;
  virtual bool selectable(int v) const = 0;

  virtual double select(int v, RngStream& rng) = 0;
  virtual double sample_increment(int v, RngStream& rng) const = 0;
  virtual double exact_increment(int v) const = 0;

  // Realized f_t of the selections made so far.
  virtual double current_value() const = 0;
  virtual const std::vector<int>& selected() const = 0;
  virtual std::string observation_digest() const = 0;
};

// Creates a fresh rollout of round t, sampling whatever hidden state the
// model realizes eagerly (tabular) or lazily (probing, influence).
std::unique_ptr<RoundRollout> make_round_rollout(const Instance& instance,
                                                 int t, RngStream& rng);

}  // namespace sbmsm

#endif  // SBMSM_ROLLOUT_HPP_
