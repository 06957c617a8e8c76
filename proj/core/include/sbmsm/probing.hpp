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

#ifndef SBMSM_PROBING_HPP_
#define SBMSM_PROBING_HPP_

#include <cstdint>
#include <vector>

#include "sbmsm/instance.hpp"

namespace sbmsm {

// f_t(S, phi) = g({v in S : phi(v) = 1}). phi holds one activation bit per
// item.
double probing_eval(const ProbingRound& round, const std::vector<int>& items,
                    const std::vector<std::uint8_t>& phi);

// Enumerates all 2^n activation vectors with product probabilities into a
// tabular instance. State index equals the activation bitmask; local state of
// item v is its activation bit. Hard guard at n <= 20.
Instance probing_to_tabular(const Instance& instance);

}  // namespace sbmsm

#endif  // SBMSM_PROBING_HPP_
