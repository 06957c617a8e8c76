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

#ifndef SBMSM_ERRORS_HPP_
#define SBMSM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sbmsm {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An instance file or in-memory instance violates a model invariant
// (probability sums, normalization, monotonicity, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A size guard refused to run an exponential-cost operation.
class GuardError : public Error {
 public:
  using Error::Error;
};

// Bad arguments to an operation (caller bug, not data bug).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace sbmsm

#endif  // SBMSM_ERRORS_HPP_
