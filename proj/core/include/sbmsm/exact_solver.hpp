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

#ifndef SBMSM_EXACT_SOLVER_HPP_
#define SBMSM_EXACT_SOLVER_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sbmsm/instance.hpp"
#include "sbmsm/rng.hpp"

namespace sbmsm {

// Size guards refusing exponential blow-ups unless explicitly overridden.
struct SolveGuards {
  int max_n = 8;
  int max_states = 64;
  int max_budget = 16;
  bool override_guards = false;

  void check(const Instance& instance, int budget) const;
};

// R(t, b): optimal expected value obtainable from rounds t..T with b budget
// units left. Row T+1 is identically zero.
struct ValueTable {
  int horizon = 0;
  int budget = 0;
  std::vector<std::vector<double>> R;  // [t-1][b], t in 1..T+1

  double at(int t, int b) const { return R.at(t - 1).at(b); }
};

constexpr int kActionStop = -1;

// Action map keyed "t|b|observation-digest" where b is the budget remaining
// at the start of round t; value is the item to select or kActionStop.
struct ExactPolicy {
  ValueTable table;
  std::map<std::string, int> actions;

  static std::string key(int t, int b, const std::string& digest) {
    return std::to_string(t) + "|" + std::to_string(b) + "|" + digest;
  }
};

struct SingleRoundResult {
  double value = 0.0;
  std::map<std::string, int> actions;  // observation digest -> action
};

// Optimal adaptive single-round value by backward induction over
// (selected set, canonical partial state) nodes. STOP at a node with i items
// selected is worth E[f_t | obs] + continuation[b - i]. With exact_b, STOP is
// forbidden until min(b, n) items are selected (the OPT_t(b) semantics).
SingleRoundResult solve_single_round(const Instance& instance, int t, int b,
                                     const std::vector<double>& continuation,
                                     bool exact_b = false,
                                     const SolveGuards& guards = {});

// Full backward induction over rounds: R(T+1, .) = 0, then Eq.-style
// recursion R(t, b) = best single-round play against continuation R(t+1, .).
ExactPolicy solve_dp(const Instance& instance, const SolveGuards& guards = {});

struct PolicyRun {
  std::vector<std::vector<int>> selected;  // per round, in selection order
  double value = 0.0;
};

// One rollout of the stored policy against a freshly sampled environment.
PolicyRun execute_exact_policy(const ExactPolicy& policy,
                               const Instance& instance, RngStream& rng);

// Node counts of the raw sequence-indexed game tree of round t with budget b,
// without memoization-merging: (policy-node count, leaf count). Every policy
// node owns exactly one STOP leaf, so the counts coincide and the total is
// exactly twice the leaf count.
std::pair<long long, long long> tree_stats(const Instance& instance, int t,
                                           int b,
                                           const SolveGuards& guards = {});

}  // namespace sbmsm

#endif  // SBMSM_EXACT_SOLVER_HPP_
