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

#include "sbmsm/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include "sbmsm/env.hpp"
#include "sbmsm/rollout.hpp"

namespace sbmsm {

namespace {

constexpr double kTol = 1e-9;

// Direct recursion over canonical multi-round histories: max at decision
// points, expectation at observation points, expected objective read off the
// state table at each STOP. No memoization, no R table.
class BruteForce {
 public:
  explicit BruteForce(const Instance& instance) : inst_(instance) {}

  double optimum() { return from_round(1, inst_.budget()); }

 private:
  double from_round(int t, int b) {
    if (t > inst_.horizon()) return 0.0;
    PartialState empty;
    empty.round = t;
    return node(t, b, 0u, empty);
  }

  double node(int t, int b, std::uint32_t mask, const PartialState& obs) {
    const auto& round = inst_.tabular_round(t);
    const int i = std::popcount(mask);
    double best = expected_objective(round, mask, obs) + from_round(t + 1, b - i);
    if (i < b && i < inst_.num_items()) {
      auto posterior = consistent_states(round, obs);
      for (int v = 0; v < inst_.num_items(); ++v) {
        if (mask & (1u << v)) continue;
        std::map<int, double> outcome;
        for (const auto& [s, p] : posterior)
          outcome[round.states[s].local[v]] += p;
        double val = 0.0;
        for (const auto& [local, p] : outcome) {
          PartialState child = obs;
          child.observations[v] = local;
          val += p * node(t, b, mask | (1u << v), child);
        }
        best = std::max(best, val);
      }
    }
    return best;
  }

  const Instance& inst_;
};

}  // namespace

double brute_force_opt(const Instance& instance) {
  instance.require_kind(ModelKind::kTabular, "brute_force_opt");
  if (instance.num_items() > 3 || instance.horizon() > 3 ||
      instance.budget() > 3)
    throw GuardError("brute_force_opt: requires n <= 3, T <= 3, B <= 3");
  for (int t = 1; t <= instance.horizon(); ++t)
    if (instance.tabular_round(t).states.size() > 4)
      throw GuardError("brute_force_opt: requires |H| <= 4");
  return BruteForce(instance).optimum();
}

ValueEstimate estimate_policy_value(
    const std::function<double(RngStream&)>& runner, long long rollouts,
    std::uint64_t seed, double range, bool normal) {
  if (rollouts < 1) throw UsageError("estimate_policy_value: rollouts >= 1");
  KahanSum sum, sumsq;
  for (long long r = 0; r < rollouts; ++r) {
    RngStream rng = RngStream::split(seed, "policy-eval", r);
    double x = runner(rng);
    sum.add(x);
    sumsq.add(x * x);
  }
  ValueEstimate est;
  est.mean = sum.value() / static_cast<double>(rollouts);
  est.rollouts = rollouts;
  est.seed = seed;
  if (normal) {
    double var = std::max(
        0.0, sumsq.value() / rollouts - est.mean * est.mean);
    est.half_width = 1.96 * std::sqrt(var / rollouts);
    est.method = "normal";
  } else {
    est.half_width =
        range * std::sqrt(std::log(2.0 / 0.05) / (2.0 * rollouts));
    est.method = "hoeffding";
  }
  return est;
}

std::vector<double> per_round_opt_table(const Instance& instance, int t,
                                        int b_max, const SolveGuards& guards) {
  std::vector<double> table;
  for (int b = 0; b <= b_max; ++b) {
    std::vector<double> zero(b + 1, 0.0);
    table.push_back(
        solve_single_round(instance, t, b, zero, true, guards).value);
  }
  return table;
}

double best_budget_vector_value(const Instance& instance,
                                const SolveGuards& guards) {
  const int T = instance.horizon();
  const int n = instance.num_items();
  const int B = instance.budget();
  std::vector<std::vector<double>> tables;
  for (int t = 1; t <= T; ++t)
    tables.push_back(per_round_opt_table(instance, t, std::min(B, n), guards));

  double best = 0.0;
  std::function<void(int, int, double)> rec = [&](int t, int left,
                                                  double acc) {
    if (t == T) {
      if (left <= n) best = std::max(best, acc + tables[t - 1][left]);
      return;
    }
    for (int b = 0; b <= std::min(left, n); ++b)
      rec(t + 1, left - b, acc + tables[t - 1][b]);
  };
  rec(1, B, 0.0);
  return best;
}

double interpolated_objective(
    const std::vector<double>& d,
    const std::vector<std::vector<double>>& opt_tables) {
  double total = 0.0;
  for (std::size_t t = 0; t < d.size(); ++t) {
    int lo = static_cast<int>(std::floor(d[t] + kTol));
    double frac = d[t] - lo;
    if (frac < kTol) {
      total += opt_tables.at(t).at(lo);
    } else {
      total += (1.0 - frac) * opt_tables.at(t).at(lo) +
               frac * opt_tables.at(t).at(lo + 1);
    }
  }
  return total;
}

BudgetVector round_fractional_budget(
    const std::vector<double>& d,
    const std::vector<std::vector<double>>& opt_tables) {
  const int T = static_cast<int>(d.size());
  if (opt_tables.size() != d.size())
    throw UsageError("round_fractional_budget: one OPT table per round");
  std::vector<double> cur = d;
  for (double x : cur)
    if (x < -kTol) throw UsageError("round_fractional_budget: negative entry");

  auto is_integral = [](double x) {
    return std::abs(x - std::round(x)) < kTol;
  };

  for (int iter = 0; iter < T; ++iter) {
    std::vector<int> fractional;
    for (int t = 0; t < T; ++t)
      if (!is_integral(cur[t])) fractional.push_back(t);
    if (fractional.empty()) break;
    if (fractional.size() == 1)
      throw UsageError("round_fractional_budget: sum is not integral");

    const int t1 = fractional[0], t2 = fractional[1];
    auto frac = [](double x) { return x - std::floor(x); };
    // Move beta units from t1 to t2. Within the current unit cells the
    // interpolated objective is linear in beta with the slope below, and at
    // either in-cell endpoint at least one round lands on an integer (t1 on
    // its floor or t2 on its ceil for beta_max; the mirror case for
    // beta_min).
    const double slope =
        opt_tables[t2][static_cast<int>(std::ceil(cur[t2]))] -
        opt_tables[t2][static_cast<int>(std::floor(cur[t2]))] -
        opt_tables[t1][static_cast<int>(std::ceil(cur[t1]))] +
        opt_tables[t1][static_cast<int>(std::floor(cur[t1]))];
    const double beta_max = std::min(frac(cur[t1]), 1.0 - frac(cur[t2]));
    const double beta_min = -std::min(frac(cur[t2]), 1.0 - frac(cur[t1]));
    const double beta = slope >= 0.0 ? beta_max : beta_min;
    cur[t1] -= beta;
    cur[t2] += beta;
    // Snap the round that hit an integer.
    if (is_integral(cur[t1])) cur[t1] = std::round(cur[t1]);
    if (is_integral(cur[t2])) cur[t2] = std::round(cur[t2]);
  }

  BudgetVector out;
  for (double x : cur) {
    if (!is_integral(x))
      throw UsageError("round_fractional_budget: failed to reach integrality");
    out.b.push_back(static_cast<int>(std::llround(x)));
  }
  return out;
}

SubmodularityCheck check_adaptive_submodularity(const Instance& instance) {
  instance.require_kind(ModelKind::kTabular, "check_adaptive_submodularity");
  const int n = instance.num_items();
  if (n > 4)
    throw GuardError("check_adaptive_submodularity: n > 4");
  SubmodularityCheck result;
  for (int t = 1; t <= instance.horizon(); ++t) {
    const auto& round = instance.tabular_round(t);
    if (round.states.size() > 32)
      throw GuardError("check_adaptive_submodularity: |H| > 32 at round " +
                       std::to_string(t));
    // All positive-probability observations, per mask.
    std::map<std::string, PartialState> all;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      for (const auto& st : round.states) {
        if (st.prob <= 0.0) continue;
        PartialState obs;
        obs.round = t;
        for (int v = 0; v < n; ++v)
          if (mask & (1u << v)) obs.observations[v] = st.local[v];
        all.emplace(obs.digest(), obs);
      }
    }
    for (const auto& [d1, o1] : all) {
      for (const auto& [d2, o2] : all) {
        if (o1.observations.size() >= o2.observations.size()) continue;
        bool nested = true;
        for (const auto& [v, s] : o1.observations) {
          auto it = o2.observations.find(v);
          if (it == o2.observations.end() || it->second != s) {
            nested = false;
            break;
          }
        }
        if (!nested) continue;
        for (int v = 0; v < n; ++v) {
          if (o2.observed(v)) continue;
          double coarse = exact_marginal(instance, t, v, o1);
          double fine = exact_marginal(instance, t, v, o2);
          if (coarse < fine - kTol) {
            std::ostringstream w;
            w << "t=" << t << " v=" << v << " S=(" << d1 << ") S'=(" << d2
              << ") delta_S=" << coarse << " delta_S'=" << fine;
            result.pass = false;
            result.witness = w.str();
            return result;
          }
        }
      }
    }
  }
  return result;
}

Instance gap_instance(int T) {
  int s = static_cast<int>(std::llround(std::sqrt(static_cast<double>(T))));
  if (T < 4 || s * s != T)
    throw UsageError("gap_instance: T must be a perfect square >= 4");
  const int n = T * s;  // T^(3/2)
  InstanceHeader header;
  header.horizon = T;
  header.budget = n;
  header.num_items = n;
  header.lambda = 1.0 / s;
  header.capital_lambda = 1.0;

  std::vector<ProbingRound> rounds;
  for (int t = 0; t < T; ++t) {
    ProbingRound round;
    round.activation.assign(n, 1.0 / s);
    round.g = make_budget_additive(std::vector<double>(n, 1.0), 1.0);
    rounds.push_back(std::move(round));
  }
  return make_probing_instance(std::move(header), std::move(rounds));
}

GapReport gap_report(int T, long long rollouts, std::uint64_t seed) {
  int s = static_cast<int>(std::llround(std::sqrt(static_cast<double>(T))));
  if (T < 4 || s * s != T)
    throw UsageError("gap_report: T must be a perfect square >= 4");
  const int B = T * s;
  const double p = 1.0 / s;

  GapReport report;
  report.T = T;
  report.sigma_partial_closed_form =
      T * (1.0 - std::pow(1.0 - p, static_cast<double>(s)));
  // The adaptive policy's value is distributed as min{T, Binomial(B, p)}, so
  // it is simulated directly instead of item by item.
  report.sigma_adaptive_estimate = estimate_policy_value(
      [B, p, T](RngStream& rng) {
        int active = 0;
        for (int k = 0; k < B && active < T; ++k)
          if (rng.bernoulli(p)) ++active;
        return static_cast<double>(std::min(T, active));
      },
      rollouts, seed, static_cast<double>(T));
  report.ratio =
      report.sigma_adaptive_estimate.mean / report.sigma_partial_closed_form;
  return report;
}

Instance remark1_instance(int T, int t_star) {
  if (T < 2) throw UsageError("remark1_instance: T >= 2");
  if (t_star <= 0) t_star = T;
  if (t_star > T) throw UsageError("remark1_instance: t_star > T");
  InstanceHeader header;
  header.horizon = T;
  header.budget = T;
  header.num_items = T;
  header.lambda = 1.0;
  header.capital_lambda = 1.0;

  std::vector<TabularRound> rounds;
  for (int t = 1; t <= T; ++t) {
    TabularRound round;
    TabularState st;
    st.prob = 1.0;
    st.local.assign(T, 0);
    round.states.push_back(std::move(st));
    if (t == t_star) {
      round.objective = [](std::uint32_t mask, int) {
        return static_cast<double>(std::popcount(mask));
      };
    } else {
      round.objective = [](std::uint32_t, int) { return 0.0; };
    }
    rounds.push_back(std::move(round));
  }
  return make_tabular_instance(std::move(header), std::move(rounds));
}

Instance remark3_instance(int n) {
  if (n < 2) throw UsageError("remark3_instance: n >= 2");
  InstanceHeader header;
  header.horizon = 2;
  header.budget = n + 1;
  header.num_items = n;
  header.lambda = 1.0;
  header.capital_lambda = 1.0;

  std::vector<double> w1(n, 0.5), w2(n, 0.0);
  w1[0] = 1.0;  // item 0 plays v*
  w2[0] = 1.0;

  std::vector<ProbingRound> rounds(2);
  rounds[0].activation.assign(n, 1.0);
  rounds[0].g = make_additive(std::move(w1));
  rounds[1].activation.assign(n, 1.0);
  rounds[1].g = make_additive(std::move(w2));
  return make_probing_instance(std::move(header), std::move(rounds));
}

double cross_round_restricted_greedy(const Instance& instance, int B,
                                     std::uint64_t seed) {
  const int T = instance.horizon();
  int t = 1;
  RngStream cur_rng = RngStream::split(seed, "xr-env", 1);
  auto cur = make_round_rollout(instance, 1, cur_rng);
  std::unique_ptr<RoundRollout> next;
  if (T >= 2) {
    RngStream next_rng = RngStream::split(seed, "xr-env", 2);
    next = make_round_rollout(instance, 2, next_rng);
  }
  RngStream select_rng = RngStream::split(seed, "xr-sel", 0);

  double value = 0.0;
  auto advance = [&] {
    value += cur->current_value();
    cur = std::move(next);
    ++t;
    if (t + 1 <= T) {
      RngStream rng = RngStream::split(seed, "xr-env",
                                       static_cast<std::uint64_t>(t + 1));
      next = make_round_rollout(instance, t + 1, rng);
    } else {
      next.reset();
    }
  };

  int budget = B;
  while (budget > 0) {
    int best_which = -1, best_v = -1;
    double best_val = 0.0;
    for (int which = 0; which < 2; ++which) {
      RoundRollout* env = which == 0 ? cur.get() : next.get();
      if (!env) continue;
      for (int v = 0; v < instance.num_items(); ++v) {
        if (!env->selectable(v)) continue;
        double e = env->exact_increment(v);
        if (best_which < 0 || e > best_val) {
          best_which = which;
          best_v = v;
          best_val = e;
        }
      }
    }
    // Nothing worth selecting in reach: move on if a later round exists.
    if (best_which < 0 || best_val <= kTol) {
      if (next) {
        advance();
        continue;
      }
      break;
    }
    if (best_which == 1) advance();
    cur->select(best_v, select_rng);
    --budget;
  }
  value += cur->current_value();
  return value;
}

std::vector<double> policy_round_usage(const ExactPolicy& policy,
                                       const Instance& instance) {
  instance.require_kind(ModelKind::kTabular, "policy_round_usage");
  const int T = instance.horizon();
  std::vector<double> d(T, 0.0);

  std::function<void(int, int, std::uint32_t, const PartialState&, double)>
      walk = [&](int t, int b, std::uint32_t mask, const PartialState& obs,
                 double prob) {
        if (t > T) return;
        auto it = policy.actions.find(ExactPolicy::key(t, b, obs.digest()));
        if (it == policy.actions.end())
          throw UsageError("policy_round_usage: unmapped node " +
                           ExactPolicy::key(t, b, obs.digest()));
        if (it->second == kActionStop) {
          PartialState fresh;
          fresh.round = t + 1;
          walk(t + 1, b - std::popcount(mask), 0u, fresh, prob);
          return;
        }
        const int v = it->second;
        d[t - 1] += prob;
        const auto& round = instance.tabular_round(t);
        std::map<int, double> outcome;
        for (const auto& [s, p] : consistent_states(round, obs))
          outcome[round.states[s].local[v]] += p;
        for (const auto& [local, p] : outcome) {
          PartialState child = obs;
          child.observations[v] = local;
          walk(t, b, mask | (1u << v), child, prob * p);
        }
      };

  PartialState root;
  root.round = 1;
  walk(1, instance.budget(), 0u, root, 1.0);
  return d;
}

Instance random_tabular_instance(int n, int T, int num_states, int B,
                                 std::uint64_t seed) {
  if (n < 1 || T < 1 || num_states < 1 || B < 0 || B >= n * T)
    throw UsageError("random_tabular_instance: bad shape");
  RngStream rng = RngStream::split(seed, "gen-tabular", 0);

  InstanceHeader header;
  header.horizon = T;
  header.budget = B;
  header.num_items = n;
  header.capital_lambda = 1.0;

  double best_single = 0.0;
  std::vector<TabularRound> rounds;
  for (int t = 0; t < T; ++t) {
    TabularRound round;
    double total = 0.0;
    std::vector<double> raw;
    for (int s = 0; s < num_states; ++s) {
      raw.push_back(0.2 + 0.8 * rng.next_double());
      total += raw.back();
    }
    // Per-state additive weights: monotone and Lambda-bounded by
    // construction, adaptive-submodular only sometimes.
    auto weights = std::make_shared<std::vector<std::vector<double>>>();
    for (int s = 0; s < num_states; ++s) {
      TabularState st;
      st.prob = raw[s] / total;
      st.local.resize(n);
      std::vector<double> w(n);
      for (int v = 0; v < n; ++v) {
        st.local[v] = static_cast<int>(rng.below(2));
        w[v] = rng.next_double();
      }
      weights->push_back(std::move(w));
      round.states.push_back(std::move(st));
    }
    for (int v = 0; v < n; ++v) {
      double e = 0.0;
      for (int s = 0; s < num_states; ++s)
        e += round.states[s].prob * (*weights)[s][v];
      best_single = std::max(best_single, e);
    }
    round.objective = [weights, n](std::uint32_t mask, int s) {
      double total = 0.0;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) total += (*weights)[s][v];
      return total;
    };
    rounds.push_back(std::move(round));
  }
  header.lambda = best_single;
  return make_tabular_instance(std::move(header), std::move(rounds));
}

Instance random_probing_instance(int n, int T, int B, std::uint64_t seed) {
  if (n < 1 || T < 1 || B < 0 || B >= n * T)
    throw UsageError("random_probing_instance: bad shape");
  RngStream rng = RngStream::split(seed, "gen-probing", 0);

  InstanceHeader header;
  header.horizon = T;
  header.budget = B;
  header.num_items = n;
  header.capital_lambda = 1.0;

  double best_single = 0.0;
  std::vector<ProbingRound> rounds;
  for (int t = 0; t < T; ++t) {
    ProbingRound round;
    std::vector<double> w(n);
    round.activation.resize(n);
    for (int v = 0; v < n; ++v) {
      round.activation[v] = 0.1 + 0.8 * rng.next_double();
      w[v] = 0.1 + 0.9 * rng.next_double();
      best_single = std::max(best_single, round.activation[v] * w[v]);
    }
    round.g = make_additive(std::move(w));
    rounds.push_back(std::move(round));
  }
  header.lambda = best_single;
  return make_probing_instance(std::move(header), std::move(rounds));
}

double deterministic_probing_opt(const Instance& instance) {
  instance.require_kind(ModelKind::kProbing, "deterministic_probing_opt");
  const int T = instance.horizon();
  const int n = instance.num_items();
  std::vector<std::vector<double>> prefix;  // [t][b]: top-b active weight sum
  for (int t = 1; t <= T; ++t) {
    const auto& round = instance.probing_round(t);
    if (round.g.family != SubmodularSpec::Family::kAdditive)
      throw UsageError("deterministic_probing_opt: additive objectives only");
    std::vector<double> active;
    for (int v = 0; v < n; ++v) {
      double p = round.activation[v];
      if (p != 0.0 && p != 1.0)
        throw UsageError(
            "deterministic_probing_opt: activations must be 0 or 1");
      active.push_back(p * round.g.weights[v]);
    }
    std::sort(active.rbegin(), active.rend());
    std::vector<double> pre = {0.0};
    for (double x : active) pre.push_back(pre.back() + x);
    prefix.push_back(std::move(pre));
  }

  const int B = instance.budget();
  double best = 0.0;
  std::function<void(int, int, double)> rec = [&](int t, int left,
                                                  double acc) {
    if (t == T) {
      best = std::max(best, acc + prefix[t - 1][std::min(left, n)]);
      return;
    }
    for (int b = 0; b <= std::min(left, n); ++b)
      rec(t + 1, left - b, acc + prefix[t - 1][b]);
  };
  rec(1, B, 0.0);
  return best;
}

}  // namespace sbmsm
