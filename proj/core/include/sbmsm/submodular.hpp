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

#ifndef SBMSM_SUBMODULAR_HPP_
#define SBMSM_SUBMODULAR_HPP_

#include <vector>

namespace sbmsm {

// A monotone submodular set function from one of three closed families:
//   additive          g(S) = sum of item weights
//   budget_additive   g(S) = min(cap, sum of item weights)
//   coverage          g(S) = total weight of universe elements covered by S
// Each family is monotone and submodular by construction.
struct SubmodularSpec {
  enum class Family { kAdditive, kBudgetAdditive, kCoverage };

  Family family = Family::kAdditive;
  std::vector<double> weights;  // per item (additive, budget_additive)
  double cap = 0.0;             // budget_additive only

  std::vector<double> element_weights;    // coverage: universe element weights
  std::vector<std::vector<int>> covers;   // coverage: per item, covered elements

  int num_items() const {
    return family == Family::kCoverage ? static_cast<int>(covers.size())
                                       : static_cast<int>(weights.size());
  }

  // Evaluates g on the given set of items.
  double eval(const std::vector<int>& items) const;

  // g({v}) upper-bounds every marginal increment of v by submodularity.
  double singleton_value(int v) const;

  // Max over items of singleton_value; a valid per-round Lambda.
  double max_increment_bound() const;
};

SubmodularSpec make_additive(std::vector<double> weights);
SubmodularSpec make_budget_additive(std::vector<double> weights, double cap);
SubmodularSpec make_coverage(std::vector<double> element_weights,
                             std::vector<std::vector<int>> covers);

}  // namespace sbmsm

#endif  // SBMSM_SUBMODULAR_HPP_
