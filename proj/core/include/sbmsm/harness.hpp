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

#ifndef SBMSM_HARNESS_HPP_
#define SBMSM_HARNESS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "sbmsm/exact_solver.hpp"
#include "sbmsm/greedy.hpp"
#include "sbmsm/instance.hpp"
#include "sbmsm/rng.hpp"

namespace sbmsm {

struct ValueEstimate {
  double mean = 0.0;
  double half_width = 0.0;
  long long rollouts = 0;
  std::uint64_t seed = 0;
  std::string method = "hoeffding";
};

struct GapReport {
  int T = 0;
  double sigma_partial_closed_form = 0.0;
  ValueEstimate sigma_adaptive_estimate;
  double ratio = 0.0;
  // Known asymptotic limit of the gap lower bound, e/(e-1).
  double limit = 1.5819767068693265;
};

// Independent optimum oracle: evaluates every deterministic adaptive
// multi-round policy by direct recursion over canonical histories, with no
// memoization and no per-round value table. Deliberately a different
// formulation than solve_dp so agreement is a genuine cross-check.
// Hard guard: n <= 3, T <= 3, |H| <= 4, B <= 3.
double brute_force_opt(const Instance& instance);

// Monte-Carlo mean of R independent runner rollouts, each on its own split
// stream. range is the per-rollout value range [0, range] used by the
// Hoeffding half-width at 95% confidence; with normal = true a
// normal-approximation width from the sample standard deviation is reported
// instead.
ValueEstimate estimate_policy_value(
    const std::function<double(RngStream&)>& runner, long long rollouts,
    std::uint64_t seed, double range, bool normal = false);

// OPT_t(b) for b = 0..b_max: best adaptive single-round value selecting
// exactly min(b, n) items (STOP forbidden earlier), zero continuation.
std::vector<double> per_round_opt_table(const Instance& instance, int t,
                                        int b_max,
                                        const SolveGuards& guards = {});

// Max over feasible integer budget vectors (sum B, entries in [0, n]) of
// sum_t OPT_t(b_t), by enumeration.
double best_budget_vector_value(const Instance& instance,
                                const SolveGuards& guards = {});

// Constructive rounding of a fractional budget vector: repeatedly shifts mass
// between two fractional rounds toward whichever integral endpoint maximizes
// the (linear) change of the interpolated objective. Terminates within T
// iterations and never decreases the interpolated objective.
BudgetVector round_fractional_budget(
    const std::vector<double>& d,
    const std::vector<std::vector<double>>& opt_tables);

// Interpolated objective sum_t ((1-frac)·OPT_t(floor d_t) + frac·OPT_t(ceil
// d_t)).
double interpolated_objective(const std::vector<double>& d,
                              const std::vector<std::vector<double>>& opt_tables);

struct SubmodularityCheck {
  bool pass = true;
  std::string witness;  // empty on pass
};

// Exhaustive conditional-marginal monotonicity check over all nested
// positive-probability observation pairs. Guard: n <= 4, |H| <= 32 per round.
SubmodularityCheck check_adaptive_submodularity(const Instance& instance);

// Worst-case budget-adaptivity-gap family: n = T^(3/2) items, B = n, per-item
// activation p = 1/sqrt(T), budget-additive objective with cap 1 and unit
// weights. T must be a perfect square >= 4.
Instance gap_instance(int T);

// Closed-form partially adaptive value T(1-(1-1/sqrt(T))^sqrt(T)) against a
// Monte-Carlo estimate of the adaptive value E[min{T, Binomial(B, p)}].
GapReport gap_report(int T, long long rollouts, std::uint64_t seed);

// T = B = n, a single deterministic state, f_{t*}(S) = |S| and f_t = 0
// elsewhere. t_star <= 0 means the last round.
Instance remark1_instance(int T, int t_star = 0);

// Two rounds, B = n+1, deterministic activations; item 0 has weight 1 in both
// rounds, the others weight 1/2 in round 1 and 0 in round 2.
Instance remark3_instance(int n);

// The misguided baseline restricting each greedy choice to items of the
// current or the next round, advancing rounds irrevocably. Requires exact
// increments (tabular or probing).
double cross_round_restricted_greedy(const Instance& instance, int B,
                                     std::uint64_t seed = 42);

// Exact expected number of items the policy selects at each round, by
// trajectory enumeration.
std::vector<double> policy_round_usage(const ExactPolicy& policy,
                                       const Instance& instance);

// Random instance generators for property tests. Tabular rounds use
// independent per-state additive weights in [0, 1] (not adaptive-submodular
// in general); probing instances are adaptive-submodular by construction.
Instance random_tabular_instance(int n, int T, int num_states, int B,
                                 std::uint64_t seed);
Instance random_probing_instance(int n, int T, int B, std::uint64_t seed);

// Exact optimum for deterministic probing instances with additive objectives
// (activation probabilities all 0 or 1): best split of B across rounds of
// top-b_t active weight sums. Used where the DP guards are out of reach.
double deterministic_probing_opt(const Instance& instance);

}  // namespace sbmsm

#endif  // SBMSM_HARNESS_HPP_
