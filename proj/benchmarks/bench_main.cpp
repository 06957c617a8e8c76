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

#include <benchmark/benchmark.h>

#include <vector>

#include "sbmsm/env.hpp"
#include "sbmsm/exact_solver.hpp"
#include "sbmsm/greedy.hpp"
#include "sbmsm/harness.hpp"
#include "sbmsm/influence.hpp"
#include "sbmsm/oracles.hpp"
#include "sbmsm/probing.hpp"

namespace {

using namespace sbmsm;

void BM_SolveDp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = random_tabular_instance(n, 3, 4, n, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_dp(inst).table.at(1, n));
  state.SetComplexityN(n);
}
BENCHMARK(BM_SolveDp)->DenseRange(2, 5)->Complexity();

void BM_BruteForceOpt(benchmark::State& state) {
  Instance inst = random_tabular_instance(3, 3, 4, 3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_opt(inst));
}
BENCHMARK(BM_BruteForceOpt);

void BM_ExactGreedyProfile(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = random_tabular_instance(n, 1, 8, n - 1, 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_greedy_profile(inst, 1));
}
BENCHMARK(BM_ExactGreedyProfile)->DenseRange(3, 6);

void BM_Oracle1(benchmark::State& state) {
  const long long q = state.range(0);
  Instance inst = random_tabular_instance(4, 1, 8, 3, 5);
  OracleConfig config;
  config.mode = OracleMode::kMonteCarlo;
  config.q_override = q;
  RngStream rng(1);
  auto env = make_round_rollout(inst, 1, rng);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle1(q, *env, 0, config, ++seed, 0));
  state.SetItemsProcessed(state.iterations() * q);
}
BENCHMARK(BM_Oracle1)->RangeMultiplier(8)->Range(64, 32768);

void BM_ProbingToTabular(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = random_probing_instance(n, 2, n, 13);
  for (auto _ : state) benchmark::DoNotOptimize(probing_to_tabular(inst));
}
BENCHMARK(BM_ProbingToTabular)->DenseRange(2, 6);

void BM_Diffuse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  InfluenceGraph graph;
  graph.num_nodes = n;
  for (int u = 0; u < n; ++u) {
    graph.edges.push_back({u, (u + 1) % n});
    graph.edges.push_back({u, (u + 2) % n});
  }
  graph.edge_prob.assign(1, std::vector<double>(graph.edges.size(), 0.3));
  graph.node_weight.assign(1, std::vector<double>(n, 1.0));
  RngStream rng(17);
  std::vector<std::uint8_t> active(n, 0);
  for (auto _ : state) {
    auto revelation = EdgeRevelation::fresh(graph, 1);
    benchmark::DoNotOptimize(
        diffuse(graph, 1, revelation, active, rng.below(n), rng));
  }
}
BENCHMARK(BM_Diffuse)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();
