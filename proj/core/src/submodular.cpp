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

#include "sbmsm/submodular.hpp"

#include <algorithm>

#include "sbmsm/errors.hpp"

namespace sbmsm {

double SubmodularSpec::eval(const std::vector<int>& items) const {
  switch (family) {
    case Family::kAdditive: {
      double s = 0.0;
      for (int v : items) s += weights.at(v);
      return s;
    }
    case Family::kBudgetAdditive: {
      double s = 0.0;
      for (int v : items) s += weights.at(v);
      return std::min(cap, s);
    }
    case Family::kCoverage: {
      std::vector<char> covered(element_weights.size(), 0);
      for (int v : items) {
        for (int e : covers.at(v)) covered.at(e) = 1;
      }
      double s = 0.0;
      for (std::size_t e = 0; e < covered.size(); ++e) {
        if (covered[e]) s += element_weights[e];
      }
      return s;
    }
  }
  throw UsageError("SubmodularSpec: unknown family");
}

double SubmodularSpec::singleton_value(int v) const {
  return eval({v});
}

double SubmodularSpec::max_increment_bound() const {
  double m = 0.0;
  for (int v = 0; v < num_items(); ++v) m = std::max(m, singleton_value(v));
  return m;
}

SubmodularSpec make_additive(std::vector<double> weights) {
  SubmodularSpec g;
  g.family = SubmodularSpec::Family::kAdditive;
  g.weights = std::move(weights);
  return g;
}

SubmodularSpec make_budget_additive(std::vector<double> weights, double cap) {
  if (cap < 0) throw ValidationError("budget_additive: cap must be >= 0");
  SubmodularSpec g;
  g.family = SubmodularSpec::Family::kBudgetAdditive;
  g.weights = std::move(weights);
  g.cap = cap;
  return g;
}

SubmodularSpec make_coverage(std::vector<double> element_weights,
                             std::vector<std::vector<int>> covers) {
  SubmodularSpec g;
  g.family = SubmodularSpec::Family::kCoverage;
  g.element_weights = std::move(element_weights);
  g.covers = std::move(covers);
  for (const auto& c : g.covers) {
    for (int e : c) {
      if (e < 0 || e >= static_cast<int>(g.element_weights.size()))
        throw ValidationError("coverage: element index out of range");
    }
  }
  return g;
}

}  // namespace sbmsm
