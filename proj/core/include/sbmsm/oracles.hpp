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

#ifndef SBMSM_ORACLES_HPP_
#define SBMSM_ORACLES_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "sbmsm/instance.hpp"
#include "sbmsm/rng.hpp"
#include "sbmsm/rollout.hpp"

namespace sbmsm {

enum class OracleMode { kMonteCarlo, kExact };

struct OracleConfig {
  OracleMode mode = OracleMode::kMonteCarlo;
  double delta = 0.0;
  double xi = 0.0;
  long long q_override = 0;            // > 0 replaces the prescribed count
  long long sample_ceiling = 10000000; // clamp, with a warning
  int workers = 1;
  // oracle2 only: drive the inner single-round greedy with exact marginals
  // (tabular instances) while still sampling the outer step increments. Keeps
  // the reference Delta_{t,i} well-defined for concentration tests.
  bool exact_inner = false;

  void validate(const Instance& instance) const;
};

// Sample counts for the two estimation oracles:
//   q  = ceil(2 Lambda^2 / delta^2 * ln(2n / xi))
//   q' = ceil(Lambda^2 / (2 delta^2) * ln(2Tn / xi))
long long q_oracle1(double delta, double xi, int n, double capital_lambda);
long long q_oracle2(double delta, double xi, int n, int T,
                    double capital_lambda);

// Clamps q to config.sample_ceiling, invoking the warning sink (if any) when
// clamping occurs. Honors q_override.
long long effective_q(long long q, const OracleConfig& config,
                      const std::function<void(const std::string&)>& warn = {});

// Empirical mean of q conditional increment samples of item v at the current
// rollout state. With workers > 1 the samples are split across streams; the
// partial sums combine in worker-index order so results are reproducible for
// a fixed (seed, worker count). In exact mode returns the exact conditional
// expectation instead.
double oracle1(long long q, const RoundRollout& env, int v,
               const OracleConfig& config, std::uint64_t master_seed,
               std::uint64_t call_index);

// Per-item oracle1 estimates for all selectable items at once (one call per
// item, each with its own split stream).
std::vector<double> oracle1_all(long long q, const RoundRollout& env,
                                const OracleConfig& config,
                                std::uint64_t master_seed,
                                std::uint64_t call_index);

// Empirical step-increment profile of the single-round greedy policy:
// position i-1 holds the mean increment of the i-th greedy selection, over q
// independent full rollouts of round t. One batch of rollouts serves every i.
std::vector<double> oracle2_profile(long long q, const Instance& instance,
                                    int t, const OracleConfig& config,
                                    std::uint64_t master_seed);

// Exact Delta_{t,i} of the exact-oracle greedy on a tabular instance, by
// exhaustive enumeration of greedy observation trajectories.
std::vector<double> exact_greedy_profile(const Instance& instance, int t);

}  // namespace sbmsm

#endif  // SBMSM_ORACLES_HPP_
