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

#ifndef SBMSM_GREEDY_HPP_
#define SBMSM_GREEDY_HPP_

#include <string>
#include <utility>
#include <vector>

#include "sbmsm/instance.hpp"
#include "sbmsm/oracles.hpp"
#include "sbmsm/rollout.hpp"

namespace sbmsm {

// Non-adaptive per-round budget split: sum equals B, each entry at most n.
struct BudgetVector {
  std::vector<int> b;  // size T

  int total() const {
    int s = 0;
    for (int x : b) s += x;
    return s;
  }
};

struct SelectionRecord {
  int t = 0;
  int step = 0;  // 1-based within the round
  int item = 0;
  double estimate = 0.0;
  std::string observation_digest;
};

struct GreedyTrace {
  BudgetVector budgets;
  std::vector<SelectionRecord> records;
  double realized_value = 0.0;
};

// delta = xi = lambda * c * epsilon / (B * (4 + 3 * Lambda)).
std::pair<double, double> epsilon_to_params(double epsilon, double c,
                                            double lambda,
                                            double capital_lambda, int B);

// Adaptive single-round greedy: selects exactly b items in b steps, each the
// oracle1 argmax among unselected items (strict >, lowest id on ties). The
// selection count is exactly b, never b+1: a loop guard written as
// "while |S_t| <= b" would overshoot by one and break the budget accounting.
std::vector<int> single_gr(const Instance& instance, int t, int b,
                           const OracleConfig& config, RoundRollout& env,
                           std::uint64_t master_seed,
                           GreedyTrace* trace = nullptr);

// Non-adaptive greedy budget allocation over the min-prefix-transformed
// oracle2 step-increment profiles.
BudgetVector budget_gr(const Instance& instance, const OracleConfig& config,
                       std::uint64_t master_seed);

// Composed partially adaptive policy: one budget_gr call, then single_gr per
// round in order.
GreedyTrace multi_gr(const Instance& instance, const OracleConfig& config,
                     std::uint64_t master_seed);

// Exact expected value of the exact-oracle greedy under the given budget
// vector: sum over rounds of the first b_t entries of the exact step profile.
double greedy_expected_value(const Instance& instance,
                             const BudgetVector& budget);

}  // namespace sbmsm

#endif  // SBMSM_GREEDY_HPP_
