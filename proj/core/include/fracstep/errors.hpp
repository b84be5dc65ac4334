// Copyright 2026 The fracstep Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace fracstep {

/// A precondition on a numerical argument does not hold (order outside its
/// admissible range, exponent not locally integrable, point outside support).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative oracle did not reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linear system expected to be nonsingular was found singular.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two discretizations were compared that are not nested.
class NestingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sweep plan would exceed its configured work budget.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration (CLI flags, config files, cache
/// metadata).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

[[noreturn]] inline void domain_fail(const std::string& what) {
  throw DomainError(what);
}

}  // namespace detail
}  // namespace fracstep
