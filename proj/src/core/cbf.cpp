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

#include "hsc/cbf.hpp"

#include <cmath>
#include <limits>

namespace hsc {

void SafetyHalfspace::validate() const {
  if (a.size() == 0 || !all_finite(a) || !std::isfinite(b)) {
    throw ContractError("SafetyHalfspace: normal and offset must be finite");
  }
  if (!(a.squaredNorm() > 0.0)) {
    throw ContractError("SafetyHalfspace: normal must be nonzero");
  }
}

void EcbfGains::validate() const {
  if (!is_hurwitz()) {
    throw ContractError("EcbfGains: need k1 > 0 and k2 > 0 (Hurwitz)");
  }
}

double barrier_value(const SafetyHalfspace& hs, const Vec& x1) {
  require_same_dim(hs.a, x1, "barrier_value");
  return hs.a.dot(x1) + hs.b;
}

double barrier_rate(const SafetyHalfspace& hs, const Vec& x2) {
  require_same_dim(hs.a, x2, "barrier_rate");
  return hs.a.dot(x2);
}

double ecbf_margin(const SafetyHalfspace& hs, const EcbfGains& gains,
                   const Vec& x1, const Vec& x2, const Vec& u) {
  gains.validate();
  require_same_dim(hs.a, u, "ecbf_margin");
  return hs.a.dot(u) + gains.k1 * barrier_value(hs, x1) +
         gains.k2 * barrier_rate(hs, x2);
}

SafeInputResult safe_input(const SafetyHalfspace& hs, const EcbfGains& gains,
                           const RobotState& state, const Vec& u_ref) {
  hs.validate();
  const double margin = ecbf_margin(hs, gains, state.x1, state.x2, u_ref);
  SafeInputResult out;
  if (margin >= 0.0) {
    out.u_cbf = u_ref;
    out.f_ref = Vec::Zero(u_ref.size());
    out.constraint_active = false;
    return out;
  }
  out.u_cbf = u_ref - hs.a * (margin / hs.a.squaredNorm());
  out.f_ref = reference_force(out.u_cbf, u_ref);
  out.constraint_active = true;
  return out;
}

Vec reference_force(const Vec& u_cbf, const Vec& u_ref) {
  require_same_dim(u_cbf, u_ref, "reference_force");
  return u_cbf - u_ref;
}

double ecbf_fast_pole(const EcbfGains& gains) {
  gains.validate();
  const double disc = gains.k2 * gains.k2 - 4.0 * gains.k1;
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  return 0.5 * (gains.k2 + std::sqrt(disc));
}

bool ecbf_admissible(double h, double h_dot, const EcbfGains& gains) {
  const double p = ecbf_fast_pole(gains);
  if (std::isnan(p)) return false;
  return h >= 0.0 && h_dot + p * h >= 0.0;
}

}  // namespace hsc
