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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsc/audit.hpp"
#include "hsc/render.hpp"
#include "hsc/scenario.hpp"

namespace hsc {

/// Random (x2, x2d) sweep of the unchecked ball radius at a fixed ratio
/// k k_v / dt. Finite-gain samples use an empty tank (the tightest case).
struct FeasibilitySweepOptions {
  RenderMode mode = RenderMode::kFiniteGain;
  double ratio = 1.0;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  Eigen::Index dim = 2;
  double speed = 2.0;  // components drawn from [-speed, speed]
  double k = 1.0;
  double dt = 0.05;
};

struct FeasibilitySweepResult {
  std::size_t samples = 0;
  std::size_t negative = 0;  // radius_sq < -tol
  double min_radius_sq = 0.0;
  std::optional<std::size_t> first_witness;
  Vec witness_x2, witness_x2d;
};

FeasibilitySweepResult feasibility_sweep(const FeasibilitySweepOptions& opt,
                                         double tol = 1e-12);

/// Scenario parameters the `sweep` command can vary.
enum class SweepParam { kKh, kK, kEmax };
SweepParam parse_sweep_param(const std::string& text);
std::string to_string(SweepParam p);

/// Returns a copy of base with one parameter replaced. For k, k_v is rescaled
/// so that k k_v stays constant.
ScenarioConfig with_param(const ScenarioConfig& base, SweepParam p,
                          double value);

struct SweepRow {
  double value = 0.0;
  /// Human gain times robot-side gain, k_h / k.
  double loop_gain = 0.0;
  /// Small-gain stability is only claimed when loop_gain < 1.
  bool stability_claimed = false;
  bool completed = false;
  std::string error;
  double max_abs = 0.0;
  AuditReport audits;
};

/// Runs one scenario per value, in parallel over `jobs` workers. Each run is
/// independent and deterministic, so results do not depend on `jobs`.
std::vector<SweepRow> run_sweep(const ScenarioConfig& base, SweepParam p,
                                const std::vector<double>& values,
                                unsigned jobs = 1);

/// Loop gain of the operator/robot interconnection.
double small_gain_product(const ScenarioConfig& config);

}  // namespace hsc
