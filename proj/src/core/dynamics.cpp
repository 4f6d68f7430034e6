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

#include "hsc/dynamics.hpp"

namespace hsc {

namespace {

void require_positive_dt(double dt, const char* what) {
  if (!(dt > 0.0)) {
    throw ContractError(std::string(what) + ": dt must be positive");
  }
}

}  // namespace

Vec reference_control(const Vec& x2d, const Vec& x2, double dt) {
  require_positive_dt(dt, "reference_control");
  require_same_dim(x2d, x2, "reference_control");
  return (x2d - x2) / dt;
}

RobotState step(const RobotState& state, const Vec& u, double dt) {
  require_positive_dt(dt, "step");
  require_same_dim(state.x1, state.x2, "step");
  require_same_dim(state.x2, u, "step");
  if (!all_finite(state.x1) || !all_finite(state.x2) || !all_finite(u)) {
    throw ContractError("step: non-finite input");
  }
  RobotState next;
  next.x1 = state.x1 + state.x2 * dt + u * (0.5 * dt * dt);
  next.x2 = state.x2 + u * dt;
  return next;
}

ClosedLoopMatrices closed_loop_matrices(double dt) {
  require_positive_dt(dt, "closed_loop_matrices");
  ClosedLoopMatrices m;
  m.a << 0.0, 1.0, 0.0, -1.0 / dt;
  m.b << 0.0, 1.0 / dt;
  return m;
}

double storage_energy(const Vec& x2, double k_v) {
  return 0.5 * k_v * x2.squaredNorm();
}

double storage_rate(const Vec& x2, const Vec& x2d, double k_v, double dt) {
  require_positive_dt(dt, "storage_rate");
  require_same_dim(x2, x2d, "storage_rate");
  return k_v * x2.dot(x2d - x2) / dt;
}

}  // namespace hsc
