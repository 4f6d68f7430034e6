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

// Deterministic closed-loop pipeline shared by the batch harness and the
// live teleoperation service.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsc/common.hpp"
#include "hsc/render.hpp"
#include "hsc/scenario.hpp"

namespace hsc {

/// One control step. Vectors are the state at the start of the step; e is the
/// tank energy the step's ball was built from.
struct TraceSample {
  double t = 0.0;
  Vec x1, x2, x2d;
  Vec u_ref, u_cbf;
  Vec f_ref, f;
  double eps = 0.0;  // 0 outside finite-gain mode
  double e = 0.0;
  double h = 0.0;
  double radius_sq = 0.0;
  bool saturated = false;

  Eigen::Index dim() const { return x1.size(); }
};

using Trace = std::vector<TraceSample>;

/// Thrown by run_scenario when a module fails mid-run.
class ScenarioAborted : public std::runtime_error {
 public:
  ScenarioAborted(std::size_t step, Trace partial, const std::string& cause);
  std::size_t step() const { return step_; }
  const Trace& partial() const { return partial_; }

 private:
  std::size_t step_;
  Trace partial_;
};

/// Owns plant, tank and disturbance state; advance() runs one step for a
/// given operator command x2d. The rendered force only reaches the plant
/// through the operator's next command.
class ClosedLoop {
 public:
  explicit ClosedLoop(const ScenarioConfig& config);

  TraceSample advance(const Vec& x2d);

  const ScenarioConfig& config() const { return config_; }
  const RobotState& state() const { return state_; }
  const TankState& tank() const { return tank_; }
  /// Force rendered on the previous step (zero before the first).
  const Vec& last_force() const { return last_force_; }
  double time() const;
  std::size_t step_index() const { return step_; }

 private:
  ScenarioConfig config_;
  RobotState state_;
  TankState tank_;
  Vec last_force_;
  DisturbanceGenerator disturbance_;
  std::size_t step_ = 0;
};

/// Runs config.steps() steps with x2d from the configured operator.
Trace run_scenario(const ScenarioConfig& config);

/// Runs the pipeline on a recorded command sequence, one step per entry.
Trace replay_commands(const ScenarioConfig& config,
                      std::span<const Vec> x2d_sequence);

/// Re-renders a recorded trace's (x2, x2d, f_ref) in another mode without
/// re-simulating the plant. Tank state evolves from e0.
struct OpenLoopRender {
  std::vector<Vec> f;
  std::vector<double> radius_sq;
  std::vector<double> e;
};
OpenLoopRender rerender(const Trace& trace, RenderMode mode,
                        const RenderParams& params, double e0 = 0.0);

}  // namespace hsc
