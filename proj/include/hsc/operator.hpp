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

// Synthetic human operators. An admittance operator reacts to the rendered
// force through x2d = r(t) - k_h F, a static map with L2 gain exactly k_h.

#include <string>
#include <vector>

#include "hsc/common.hpp"

namespace hsc {

enum class IntentionKind { kConstant, kPiecewise, kSinusoid, kStylusTrace };

/// Operator intention r(t). Only the fields of the active kind are used.
struct IntentionProfile {
  IntentionKind kind = IntentionKind::kConstant;

  // constant
  Vec value;

  // piecewise: linear interpolation between knots, held after the last one.
  // With repeat, t is wrapped modulo the last knot time.
  std::vector<double> times;
  std::vector<Vec> values;
  bool repeat = false;

  // sinusoid: offset + amplitude * sin(omega t + phase), per axis
  Vec offset;
  Vec amplitude;
  double omega = 1.0;
  double phase = 0.0;

  // stylus_trace: displacement samples [cm] held between times
  std::vector<Vec> displacement_cm;
  double dead_zone_cm = 1.0;
  double gain_mps_per_cm = 0.2;

  Eigen::Index dim() const;
  /// Throws ConfigError on inconsistent knots or dimensions.
  void validate() const;
};

enum class OperatorKind { kScripted, kAdmittance };

struct OperatorModel {
  OperatorKind kind = OperatorKind::kScripted;
  double k_h = 0.0;  // m/s per force unit
  IntentionProfile intention;

  void validate() const;
  /// Gain from F to x2d - r: k_h for admittance, 0 when scripted.
  double l2_gain() const { return kind == OperatorKind::kAdmittance ? k_h : 0.0; }
};

/// r(t) at time t >= 0.
Vec intention_at(const IntentionProfile& profile, double t);

/// x2d for the current rendered force.
Vec operator_command(const OperatorModel& model, double t, const Vec& f);

/// Per axis: 0 inside the dead-zone (|d| < dead_zone), gain * d outside.
/// The jump at the edge has height gain * dead_zone.
Vec stylus_to_velocity(const Vec& displacement_cm, double dead_zone_cm,
                       double gain_mps_per_cm);
Vec stylus_to_velocity(const Vec& displacement_cm,
                       const IntentionProfile& profile);

std::string to_string(IntentionKind kind);
IntentionKind parse_intention_kind(const std::string& text);
std::string to_string(OperatorKind kind);
OperatorKind parse_operator_kind(const std::string& text);

}  // namespace hsc
