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
#include <filesystem>
#include <random>
#include <string>

#include "json.hpp"

#include "hsc/cbf.hpp"
#include "hsc/common.hpp"
#include "hsc/dynamics.hpp"
#include "hsc/operator.hpp"
#include "hsc/render.hpp"

namespace hsc {

enum class DisturbanceKind { kNone, kStep, kNoise };

/// Additive acceleration disturbance applied to the plant input.
struct DisturbanceSpec {
  DisturbanceKind kind = DisturbanceKind::kNone;
  double onset = 0.0;  // step: time the step switches on [s]
  Vec magnitude;       // step: constant acceleration; noise: per-axis stddev
  double cutoff_hz = 1.0;  // noise: first-order low-pass corner
};

/// What the plant is driven by. Shared control feeds the operator's reference
/// input; validation feeds the CBF-filtered input.
enum class PlantInput { kReference, kSafe };

struct ScenarioConfig {
  std::string name = "scenario";
  double dt = 0.05;
  double duration = 10.0;
  RobotState initial;
  SafetyHalfspace barrier;
  EcbfGains gains;
  RenderParams render;  // render.dt mirrors dt
  RenderMode mode = RenderMode::kFiniteGain;
  double e0 = 0.0;  // initial tank energy
  OperatorModel op;
  DisturbanceSpec disturbance;
  PlantInput plant_input = PlantInput::kReference;
  std::uint64_t seed = 0;

  Eigen::Index dim() const { return initial.x1.size(); }
  /// Integer number of control steps in duration.
  std::size_t steps() const;
  /// Throws ConfigError (or ContractError from nested checks) when invalid.
  void validate() const;
};

/// Parses the JSON scenario schema; unknown keys are errors.
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig parse_scenario_text(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

nlohmann::json scenario_to_json(const ScenarioConfig& config);

/// Seeded disturbance source. Noise is white Gaussian through a first-order
/// low-pass, scaled so the stationary stddev equals the configured one.
class DisturbanceGenerator {
 public:
  DisturbanceGenerator(const DisturbanceSpec& spec, Eigen::Index dim,
                       double dt, std::uint64_t seed);
  Vec sample(double t);

 private:
  DisturbanceSpec spec_;
  Eigen::Index dim_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  double alpha_ = 0.0;
  double input_gain_ = 0.0;
  Vec filtered_;
};

std::string to_string(DisturbanceKind kind);
std::string to_string(PlantInput input);

}  // namespace hsc
