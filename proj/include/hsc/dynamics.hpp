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

// Planar double integrator, proportional velocity controller and the
// storage function used by both force-shaping modes.

#include <Eigen/Core>

#include "hsc/common.hpp"

namespace hsc {

/// Position/velocity pair. Both vectors share the same dimension.
struct RobotState {
  Vec x1;  // position [m]
  Vec x2;  // velocity [m/s]

  static RobotState at_rest(const Vec& position) {
    return {position, Vec::Zero(position.size())};
  }
  Eigen::Index dim() const { return x1.size(); }
};

/// Parameters shared by both QCQP modes.
struct RenderParams {
  double k = 1.0;       // L2-gain parameter, > 0
  double k_v = 0.025;   // storage scale, >= 0
  double dt = 0.05;     // controller time constant [s], > 0
  double e_max = 0.0;   // tank cap, >= 0

  /// k * k_v / dt; the quantity both feasibility bounds are stated in.
  double ratio() const { return k * k_v / dt; }
};

/// Acceleration that makes x2 reach x2d in one time constant.
Vec reference_control(const Vec& x2d, const Vec& x2, double dt);

/// Exact zero-order-hold step of x1' = x2, x2' = u.
RobotState step(const RobotState& state, const Vec& u, double dt);

/// Per-axis closed-loop model once u = reference_control(x2d, x2, dt):
/// d/dt [x1; x2] = A [x1; x2] + B x2d.
struct ClosedLoopMatrices {
  Eigen::Matrix2d a;
  Eigen::Vector2d b;
};
ClosedLoopMatrices closed_loop_matrices(double dt);

/// V = (k_v / 2) |x2|^2.
double storage_energy(const Vec& x2, double k_v);

/// dV/dt = k_v x2^T (x2d - x2) / dt under the closed-loop model.
double storage_rate(const Vec& x2, const Vec& x2d, double k_v, double dt);

}  // namespace hsc
