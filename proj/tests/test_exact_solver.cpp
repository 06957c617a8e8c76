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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sbmsm/exact_solver.hpp"
#include "sbmsm/harness.hpp"
#include "sbmsm/probing.hpp"
#include "test_util.hpp"

using namespace sbmsm;
using namespace sbmsm::test;

namespace {

long long factorial_sequences(int n) {
  // sum_{k=0}^{n} n!/(n-k)!
  long long total = 0;
  for (int k = 0; k <= n; ++k) {
    long long term = 1;
    for (int j = 0; j < k; ++j) term *= (n - j);
    total += term;
  }
  return total;
}

}  // namespace

TEST_CASE("solve_single_round: zero budget stops immediately") {
  Instance inst = deterministic_additive({5.0, 2.0}, 1);
  std::vector<double> continuation = {7.5};
  auto result = solve_single_round(inst, 1, 0, continuation);
  CHECK(result.value == doctest::Approx(7.5));
  CHECK(result.actions.at("-") == kActionStop);
}

TEST_CASE("solve_single_round: prefix vs continuation trade-off") {
  Instance inst = deterministic_additive({5.0, 2.0, 1.0}, 2);
  SUBCASE("large continuation wins") {
    std::vector<double> continuation = {0.0, 3.0, 10.0};
    CHECK(solve_single_round(inst, 1, 2, continuation).value ==
          doctest::Approx(10.0));
  }
  SUBCASE("items win") {
    std::vector<double> continuation = {0.0, 0.0, 0.0};
    CHECK(solve_single_round(inst, 1, 2, continuation).value ==
          doctest::Approx(7.0));
  }
  SUBCASE("split wins") {
    std::vector<double> continuation = {0.0, 4.0, 0.0};
    // i=1: 5 + 4 = 9 beats both i=0 (0) and i=2 (7).
    CHECK(solve_single_round(inst, 1, 2, continuation).value ==
          doctest::Approx(9.0));
  }
}

TEST_CASE("solve_single_round: cardinality round selects everything") {
  Instance inst = remark1_instance(4);  // f_{t*}(S) = |S| at t* = T
  std::vector<double> continuation(5, 0.0);
  auto result = solve_single_round(inst, 4, 4, continuation);
  CHECK(result.value == doctest::Approx(4.0));
}

TEST_CASE("solve_dp: T=1 equals the single-round solve") {
  Instance inst = probing_to_tabular(
      probing_additive(2, {{{0.5, 0.9, 0.4}, {1.0, 0.5, 2.0}}}));
  std::vector<double> zero(inst.budget() + 1, 0.0);
  auto single = solve_single_round(inst, 1, inst.budget(), zero);
  auto policy = solve_dp(inst);
  CHECK(policy.table.at(1, inst.budget()) == doctest::Approx(single.value));
}

TEST_CASE("solve_dp: designated-round cardinality instance") {
  for (int T : {2, 3, 5}) {
    auto policy = solve_dp(remark1_instance(T));
    CHECK(policy.table.at(1, T) == doctest::Approx(T).epsilon(1e-12));
  }
}

TEST_CASE("solve_dp: two-round probing instance with a shared star item") {
  Instance inst = probing_to_tabular(remark3_instance(4));
  auto policy = solve_dp(inst);
  CHECK(policy.table.at(1, 5) == doctest::Approx(4.0 / 2 + 1.5));
}

TEST_CASE("ValueTable invariants on solved instances") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Instance inst = random_tabular_instance(3, 3, 3, 3, seed);
    auto policy = solve_dp(inst);
    const auto& table = policy.table;
    for (int b = 0; b <= table.budget; ++b)
      CHECK(table.at(table.horizon + 1, b) == 0.0);
    for (int t = 1; t <= table.horizon; ++t) {
      for (int b = 0; b <= table.budget; ++b) {
        if (b > 0) CHECK(table.at(t, b) >= table.at(t, b - 1) - 1e-9);
        CHECK(table.at(t, b) >= table.at(t + 1, b) - 1e-9);
      }
    }
  }
}

TEST_CASE("solve_dp agrees with the unmemoized policy enumeration") {
  // Canonical-state merging must not change R(1,B): brute_force_opt never
  // merges permutation-equivalent histories.
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    Instance inst = random_tabular_instance(3, 2, 4, 2, seed);
    CHECK(solve_dp(inst).table.at(1, 2) ==
          doctest::Approx(brute_force_opt(inst)).epsilon(1e-9));
  }
}

TEST_CASE("execute_exact_policy: deterministic rollouts hit R(1,B)") {
  Instance inst = deterministic_additive({3.0, 1.0, 2.0}, 2);
  auto policy = solve_dp(inst);
  for (int i = 0; i < 20; ++i) {
    RngStream rng(i);
    CHECK(execute_exact_policy(policy, inst, rng).value ==
          doctest::Approx(policy.table.at(1, 2)));
  }
}

TEST_CASE("execute_exact_policy: cardinality instance returns T always") {
  Instance inst = remark1_instance(3);
  auto policy = solve_dp(inst);
  for (int i = 0; i < 20; ++i) {
    RngStream rng(i);
    CHECK(execute_exact_policy(policy, inst, rng).value ==
          doctest::Approx(3.0));
  }
}

TEST_CASE("execute_exact_policy: rollout mean is consistent with R(1,B)") {
  Instance inst = random_tabular_instance(3, 2, 3, 2, 5);
  auto policy = solve_dp(inst);
  const long long rollouts = 100000;
  KahanSum sum, sumsq;
  for (long long r = 0; r < rollouts; ++r) {
    RngStream rng = RngStream::split(31, "exec", r);
    double v = execute_exact_policy(policy, inst, rng).value;
    sum.add(v);
    sumsq.add(v * v);
  }
  double mean = sum.value() / rollouts;
  double var = std::max(0.0, sumsq.value() / rollouts - mean * mean);
  double se = std::sqrt(var / rollouts);
  CHECK(std::abs(mean - policy.table.at(1, 2)) <= 3.0 * se + 1e-9);
}

TEST_CASE("tree_stats: the one-item tree has two leaves") {
  Instance inst = deterministic_additive({1.0}, 0);
  auto [policy_nodes, leaves] = tree_stats(inst, 1, 1);
  CHECK(leaves == 2);
  CHECK(policy_nodes == 2);
}

TEST_CASE("tree_stats: raw-tree bounds hold") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    int n = 2 + static_cast<int>(seed % 3);
    Instance inst = random_tabular_instance(n, 1, 3, n - 1, seed);
    auto [policy_nodes, leaves] = tree_stats(inst, 1, n - 1);
    long long states =
        static_cast<long long>(inst.tabular_round(1).states.size());
    CHECK(leaves <= factorial_sequences(n) * states);
    CHECK(policy_nodes + leaves == 2 * leaves);
  }
}

TEST_CASE("guards refuse oversized instances unless overridden") {
  Instance inst = remark1_instance(10);
  CHECK_THROWS_AS(solve_dp(inst), GuardError);
  SolveGuards guards;
  guards.override_guards = true;
  CHECK(solve_dp(inst, guards).table.at(1, 10) == doctest::Approx(10.0));
}
