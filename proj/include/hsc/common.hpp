// Copyright 2026 The Haptic Shared Control Authors
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

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace hsc {

/// Dynamic-size column vector; every per-axis quantity in the stack uses it.
using Vec = Eigen::VectorXd;

/// Caller broke an operation's precondition (dimension mismatch, bad sign).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scenario or parameter set rejected at construction time.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A feasible set turned out empty. Parameter validation should have
/// prevented it, so this points at a bypassed check.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant (e.g. tank drained faster than one step).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require_same_dim(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw ContractError(std::string(what) + ": dimension mismatch (" +
                        std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  }
}

inline bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace hsc
