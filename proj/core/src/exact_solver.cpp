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

#include "sbmsm/exact_solver.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "sbmsm/env.hpp"

namespace sbmsm {

void SolveGuards::check(const Instance& instance, int budget) const {
  if (override_guards) return;
  instance.require_kind(ModelKind::kTabular, "exact solve");
  if (instance.num_items() > max_n)
    throw GuardError("exact solve: n = " + std::to_string(instance.num_items()) +
                     " exceeds guard " + std::to_string(max_n));
  for (int t = 1; t <= instance.horizon(); ++t) {
    int states = static_cast<int>(instance.tabular_round(t).states.size());
    if (states > max_states)
      throw GuardError("exact solve: |H| = " + std::to_string(states) +
                       " at round " + std::to_string(t) + " exceeds guard " +
                       std::to_string(max_states));
  }
  if (budget > max_budget)
    throw GuardError("exact solve: budget " + std::to_string(budget) +
                     " exceeds guard " + std::to_string(max_budget));
}

namespace {

class SingleRoundSolver {
 public:
  SingleRoundSolver(const Instance& instance, int t, int b,
                    const std::vector<double>& continuation, bool exact_b)
      : round_(instance.tabular_round(t)),
        n_(instance.num_items()),
        b_(b),
        continuation_(continuation),
        exact_b_(exact_b) {}

  double solve(std::map<std::string, int>* actions) {
    PartialState root;
    root.round = 1;
    double value = node(0u, root);
    if (actions) *actions = std::move(best_action_);
    return value;
  }

 private:
  double node(std::uint32_t mask, const PartialState& obs) {
    const std::string digest = obs.digest();
    auto hit = memo_.find(digest);
    if (hit != memo_.end()) return hit->second;

    const int i = std::popcount(mask);
    const bool must_select = exact_b_ && i < std::min(b_, n_);
    double best = -std::numeric_limits<double>::infinity();
    int best_act = kActionStop;
    if (!must_select)
      best = expected_objective(round_, mask, obs) + continuation_.at(b_ - i);

    if (i < b_ && i < n_) {
      auto posterior = consistent_states(round_, obs);
      for (int v = 0; v < n_; ++v) {
        if (mask & (1u << v)) continue;
        // Branch on the local-state outcome of v under the posterior.
        std::map<int, double> outcome;
        for (const auto& [s, p] : posterior)
          outcome[round_.states[s].local[v]] += p;
        double val = 0.0;
        for (const auto& [local, p] : outcome) {
          PartialState child = obs;
          child.observations[v] = local;
          val += p * node(mask | (1u << v), child);
        }
        if (val > best) {
          best = val;
          best_act = v;
        }
      }
    }
    memo_[digest] = best;
    best_action_[digest] = best_act;
    return best;
  }

  const TabularRound& round_;
  int n_;
  int b_;
  const std::vector<double>& continuation_;
  bool exact_b_;
  std::map<std::string, double> memo_;
  std::map<std::string, int> best_action_;
};

}  // namespace

SingleRoundResult solve_single_round(const Instance& instance, int t, int b,
                                     const std::vector<double>& continuation,
                                     bool exact_b, const SolveGuards& guards) {
  guards.check(instance, b);
  if (static_cast<int>(continuation.size()) != b + 1)
    throw UsageError("solve_single_round: continuation array must cover 0..b");
  SingleRoundResult result;
  SingleRoundSolver solver(instance, t, b, continuation, exact_b);
  result.value = solver.solve(&result.actions);
  return result;
}

ExactPolicy solve_dp(const Instance& instance, const SolveGuards& guards) {
  guards.check(instance, instance.budget());
  const int T = instance.horizon();
  const int B = instance.budget();

  ExactPolicy policy;
  policy.table.horizon = T;
  policy.table.budget = B;
  policy.table.R.assign(T + 1, std::vector<double>(B + 1, 0.0));

  for (int t = T; t >= 1; --t) {
    for (int b = 0; b <= B; ++b) {
      std::vector<double> continuation(policy.table.R[t].begin(),
                                       policy.table.R[t].begin() + b + 1);
      SingleRoundResult res =
          solve_single_round(instance, t, b, continuation, false, guards);
      policy.table.R[t - 1][b] = res.value;
      for (const auto& [digest, act] : res.actions)
        policy.actions[ExactPolicy::key(t, b, digest)] = act;
    }
  }
  return policy;
}

PolicyRun execute_exact_policy(const ExactPolicy& policy,
                               const Instance& instance, RngStream& rng) {
  instance.require_kind(ModelKind::kTabular, "execute_exact_policy");
  PolicyRun run;
  int b = instance.budget();
  for (int t = 1; t <= instance.horizon(); ++t) {
    const auto& round = instance.tabular_round(t);
    const int hidden = sample_state(instance, t, rng);
    PartialState obs;
    obs.round = t;
    std::uint32_t mask = 0;
    std::vector<int> picked;
    for (;;) {
      auto it = policy.actions.find(ExactPolicy::key(t, b, obs.digest()));
      if (it == policy.actions.end())
        throw UsageError("execute_exact_policy: unmapped node " +
                         ExactPolicy::key(t, b, obs.digest()));
      int act = it->second;
      if (act == kActionStop) break;
      mask |= (1u << act);
      obs.observations[act] = round.states[hidden].local[act];
      picked.push_back(act);
    }
    run.value += round.objective(mask, hidden);
    b -= static_cast<int>(picked.size());
    run.selected.push_back(std::move(picked));
  }
  return run;
}

namespace {

void count_raw_tree(const TabularRound& round, int n, int b,
                    std::uint32_t mask, const PartialState& obs,
                    long long* policy_nodes, long long* leaves) {
  ++*policy_nodes;
  ++*leaves;  // the STOP leaf of this node
  const int i = std::popcount(mask);
  if (i >= b || i >= n) return;
  auto posterior = consistent_states(round, obs);
  for (int v = 0; v < n; ++v) {
    if (mask & (1u << v)) continue;
    std::map<int, double> outcome;
    for (const auto& [s, p] : posterior)
      outcome[round.states[s].local[v]] += p;
    for (const auto& [local, p] : outcome) {
      PartialState child = obs;
      child.observations[v] = local;
      count_raw_tree(round, n, b, mask | (1u << v), child, policy_nodes,
                     leaves);
    }
  }
}

}  // namespace

std::pair<long long, long long> tree_stats(const Instance& instance, int t,
                                           int b, const SolveGuards& guards) {
  guards.check(instance, b);
  long long policy_nodes = 0, leaves = 0;
  PartialState root;
  root.round = t;
  count_raw_tree(instance.tabular_round(t), instance.num_items(), b, 0u, root,
                 &policy_nodes, &leaves);
  return {policy_nodes, leaves};
}

}  // namespace sbmsm
