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

#include "sbmsm/oracles.hpp"

#include <bit>
#include <cmath>

#include "sbmsm/env.hpp"

namespace sbmsm {

void OracleConfig::validate(const Instance& instance) const {
  if (mode == OracleMode::kExact) {
    if (instance.kind() != ModelKind::kTabular)
      throw UsageError(
          "oracle config: exact mode requires tabular conditioning");
    return;
  }
  if (q_override > 0) return;
  if (delta <= 0.0 || xi <= 0.0)
    throw UsageError("oracle config: monte_carlo requires delta > 0, xi > 0");
  if (xi >= 1.0) throw UsageError("oracle config: xi must be < 1");
}

long long q_oracle1(double delta, double xi, int n, double capital_lambda) {
  if (delta <= 0.0 || xi <= 0.0)
    throw UsageError("q_oracle1: delta and xi must be positive");
  double q = 2.0 * capital_lambda * capital_lambda / (delta * delta) *
             std::log(2.0 * n / xi);
  return std::max(1LL, static_cast<long long>(std::ceil(q)));
}

long long q_oracle2(double delta, double xi, int n, int T,
                    double capital_lambda) {
  if (delta <= 0.0 || xi <= 0.0)
    throw UsageError("q_oracle2: delta and xi must be positive");
  double q = capital_lambda * capital_lambda / (2.0 * delta * delta) *
             std::log(2.0 * static_cast<double>(T) * n / xi);
  return std::max(1LL, static_cast<long long>(std::ceil(q)));
}

long long effective_q(long long q, const OracleConfig& config,
                      const std::function<void(const std::string&)>& warn) {
  if (config.q_override > 0) q = config.q_override;
  if (q > config.sample_ceiling) {
    if (warn)
      warn("sample count " + std::to_string(q) + " clamped to ceiling " +
           std::to_string(config.sample_ceiling) +
           "; the estimation guarantee no longer applies");
    q = config.sample_ceiling;
  }
  return q;
}

double oracle1(long long q, const RoundRollout& env, int v,
               const OracleConfig& config, std::uint64_t master_seed,
               std::uint64_t call_index) {
  if (config.mode == OracleMode::kExact) return env.exact_increment(v);
  if (q < 1) throw UsageError("oracle1: q must be >= 1");
  const int workers = std::max(1, config.workers);
  double total = 0.0;
  long long done = 0;
  for (int w = 0; w < workers; ++w) {
    long long share = q / workers + (w < q % workers ? 1 : 0);
    RngStream rng =
        RngStream::split(master_seed, "oracle1", (call_index << 8) | w);
    KahanSum sum;
    for (long long s = 0; s < share; ++s)
      sum.add(env.sample_increment(v, rng));
    total += sum.value();
    done += share;
  }
  return total / static_cast<double>(done);
}

std::vector<double> oracle1_all(long long q, const RoundRollout& env,
                                const OracleConfig& config,
                                std::uint64_t master_seed,
                                std::uint64_t call_index) {
  std::vector<double> out(env.num_items(), 0.0);
  for (int v = 0; v < env.num_items(); ++v) {
    if (!env.selectable(v)) continue;
    out[v] = oracle1(q, env, v, config, master_seed,
                     call_index * env.num_items() + v);
  }
  return out;
}

std::vector<double> oracle2_profile(long long q, const Instance& instance,
                                    int t, const OracleConfig& config,
                                    std::uint64_t master_seed) {
  if (config.mode == OracleMode::kExact)
    return exact_greedy_profile(instance, t);

  const int n = instance.num_items();
  std::vector<KahanSum> inc(n);

  // The inner single-round greedy policy pi(t) estimates its own marginals
  // with oracle1 at the same (delta, xi).
  long long inner_q = effective_q(
      config.delta > 0.0 && config.xi > 0.0
          ? q_oracle1(config.delta, config.xi, n,
                      instance.header.capital_lambda)
          : 1,
      config);

  for (long long r = 0; r < q; ++r) {
    RngStream env_rng = RngStream::split(master_seed, "oracle2-env", r);
    auto env = make_round_rollout(instance, t, env_rng);
    for (int i = 0; i < n; ++i) {
      int best = -1;
      double best_val = 0.0;
      for (int v = 0; v < n; ++v) {
        if (!env->selectable(v)) continue;
        double est =
            config.exact_inner
                ? env->exact_increment(v)
                : oracle1(inner_q, *env, v, config, master_seed,
                          ((r * n + i) * n + v) + 1000003ULL);
        if (best < 0 || est > best_val) {
          best = v;
          best_val = est;
        }
      }
      if (best < 0) break;
      inc[i].add(env->select(best, env_rng));
    }
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = inc[i].value() / static_cast<double>(q);
  return out;
}

namespace {

void greedy_trajectories(const Instance& instance, int t, std::uint32_t mask,
                         const PartialState& obs, double prob,
                         std::vector<double>* inc) {
  const int n = instance.num_items();
  const int i = std::popcount(mask);
  if (i >= n) return;

  int best = -1;
  double best_val = 0.0;
  for (int v = 0; v < n; ++v) {
    if (mask & (1u << v)) continue;
    double m = exact_marginal(instance, t, v, obs);
    if (best < 0 || m > best_val) {
      best = v;
      best_val = m;
    }
  }
  (*inc)[i] += prob * best_val;

  const auto& round = instance.tabular_round(t);
  std::map<int, double> outcome;
  for (const auto& [s, p] : consistent_states(round, obs))
    outcome[round.states[s].local[best]] += p;
  for (const auto& [local, p] : outcome) {
    PartialState child = obs;
    child.observations[best] = local;
    greedy_trajectories(instance, t, mask | (1u << best), child, prob * p,
                        inc);
  }
}

}  // namespace

std::vector<double> exact_greedy_profile(const Instance& instance, int t) {
  instance.require_kind(ModelKind::kTabular, "exact_greedy_profile");
  if (instance.num_items() > 12)
    throw GuardError("exact_greedy_profile: n > 12");
  std::vector<double> inc(instance.num_items(), 0.0);
  PartialState root;
  root.round = t;
  greedy_trajectories(instance, t, 0u, root, 1.0, &inc);
  return inc;
}

}  // namespace sbmsm
