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

#include "sbmsm/greedy.hpp"

#include <algorithm>
#include <limits>

namespace sbmsm {

std::pair<double, double> epsilon_to_params(double epsilon, double c,
                                            double lambda,
                                            double capital_lambda, int B) {
  if (epsilon <= 0.0) throw UsageError("epsilon_to_params: epsilon must be > 0");
  if (c <= 0.0 || c > 1.0)
    throw UsageError("epsilon_to_params: c must be in (0, 1]");
  if (lambda <= 0.0 || capital_lambda <= 0.0 || B <= 0)
    throw UsageError("epsilon_to_params: lambda, Lambda, B must be positive");
  double d = lambda * c * epsilon / (B * (4.0 + 3.0 * capital_lambda));
  return {d, d};
}

std::vector<int> single_gr(const Instance& instance, int t, int b,
                           const OracleConfig& config, RoundRollout& env,
                           std::uint64_t master_seed, GreedyTrace* trace) {
  const int n = instance.num_items();
  if (b < 0 || b > n) throw UsageError("single_gr: b must be in [0, n]");
  config.validate(instance);

  long long q = 0;
  if (config.mode == OracleMode::kMonteCarlo)
    q = effective_q(config.delta > 0.0 && config.xi > 0.0
                        ? q_oracle1(config.delta, config.xi, n,
                                    instance.header.capital_lambda)
                        : 1,
                    config);

  std::vector<int> picked;
  RngStream env_rng = RngStream::split(master_seed, "single-gr-env",
                                       static_cast<std::uint64_t>(t));
  for (int step = 1; step <= b; ++step) {
    int best = -1;
    double best_val = 0.0;
    for (int v = 0; v < n; ++v) {
      if (!env.selectable(v)) continue;
      double est =
          config.mode == OracleMode::kExact
              ? env.exact_increment(v)
              : oracle1(q, env, v, config, master_seed,
                        (static_cast<std::uint64_t>(t) << 32) |
                            (static_cast<std::uint64_t>(step) << 16) | v);
      if (best < 0 || est > best_val) {
        best = v;
        best_val = est;
      }
    }
    if (best < 0)
      throw UsageError("single_gr: fewer selectable items than budget");
    env.select(best, env_rng);
    picked.push_back(best);
    if (trace)
      trace->records.push_back(
          {t, step, best, best_val, env.observation_digest()});
  }
  return picked;
}

BudgetVector budget_gr(const Instance& instance, const OracleConfig& config,
                       std::uint64_t master_seed) {
  config.validate(instance);
  const int T = instance.horizon();
  const int n = instance.num_items();
  const int B = instance.budget();
  if (B >= n * T) throw UsageError("budget_gr: requires B < n*T");

  long long q = 0;
  if (config.mode == OracleMode::kMonteCarlo)
    q = effective_q(config.delta > 0.0 && config.xi > 0.0
                        ? q_oracle2(config.delta, config.xi, n, T,
                                    instance.header.capital_lambda)
                        : 1,
                    config);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // bar[t][i], i in 0..n+1, with the +inf / -inf sentinels and the min-prefix
  // transform making each row non-increasing.
  std::vector<std::vector<double>> bar(T, std::vector<double>(n + 2));
  for (int t = 1; t <= T; ++t) {
    std::vector<double> profile =
        oracle2_profile(q, instance, t, config,
                        RngStream::split(master_seed, "budget-gr",
                                         static_cast<std::uint64_t>(t))
                            .next_u64());
    auto& row = bar[t - 1];
    row[0] = kInf;
    for (int i = 1; i <= n; ++i) row[i] = std::min(row[i - 1], profile[i - 1]);
    row[n + 1] = -kInf;
  }

  BudgetVector out;
  out.b.assign(T, 0);
  for (int unit = 0; unit < B; ++unit) {
    int best_t = 0;
    double best_val = -kInf;
    for (int t = 0; t < T; ++t) {
      double val = bar[t][out.b[t] + 1];
      if (val > best_val) {
        best_val = val;
        best_t = t;
      }
    }
    ++out.b[best_t];
  }
  return out;
}

GreedyTrace multi_gr(const Instance& instance, const OracleConfig& config,
                     std::uint64_t master_seed) {
  GreedyTrace trace;
  trace.budgets = budget_gr(instance, config, master_seed);
  for (int t = 1; t <= instance.horizon(); ++t) {
    RngStream env_rng = RngStream::split(master_seed, "multi-gr-env",
                                         static_cast<std::uint64_t>(t));
    auto env = make_round_rollout(instance, t, env_rng);
    single_gr(instance, t, trace.budgets.b[t - 1], config, *env, master_seed,
              &trace);
    trace.realized_value += env->current_value();
  }
  return trace;
}

double greedy_expected_value(const Instance& instance,
                             const BudgetVector& budget) {
  instance.require_kind(ModelKind::kTabular, "greedy_expected_value");
  if (static_cast<int>(budget.b.size()) != instance.horizon())
    throw UsageError("greedy_expected_value: budget vector size != T");
  double total = 0.0;
  for (int t = 1; t <= instance.horizon(); ++t) {
    int b = budget.b[t - 1];
    if (b < 0 || b > instance.num_items())
      throw UsageError("greedy_expected_value: infeasible budget entry");
    if (b == 0) continue;
    std::vector<double> profile = exact_greedy_profile(instance, t);
    for (int i = 0; i < b; ++i) total += profile[i];
  }
  return total;
}

}  // namespace sbmsm
