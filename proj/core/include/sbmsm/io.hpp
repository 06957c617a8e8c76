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

#ifndef SBMSM_IO_HPP_
#define SBMSM_IO_HPP_

#include <string>

#include <json.hpp>

#include "sbmsm/exact_solver.hpp"
#include "sbmsm/greedy.hpp"
#include "sbmsm/harness.hpp"
#include "sbmsm/instance.hpp"

namespace sbmsm {

// Instance files: top level {kind, T, B, items, lambda, capital_lambda,
// rounds} (influence instances carry a "graph" object instead of rounds).
// Tabular round objectives are dense tables keyed "<mask-decimal>@<state
// index>"; a missing key is legal only for the empty set.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& instance);
Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

// Edge-list ingestion for influence graphs: one "u v p_1 ... p_T" line per
// edge; node weights default to 1 in every round.
InfluenceGraph load_edge_list(const std::string& path, int horizon);

nlohmann::json policy_to_json(const ExactPolicy& policy);
ExactPolicy policy_from_json(const nlohmann::json& j);

nlohmann::json value_estimate_to_json(const ValueEstimate& est);
nlohmann::json gap_report_to_json(const GapReport& report);
std::string gap_report_to_csv(const GapReport& report);

// One JSON object per selection, newline-separated.
std::string trace_to_json_lines(const GreedyTrace& trace);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sbmsm

#endif  // SBMSM_IO_HPP_
