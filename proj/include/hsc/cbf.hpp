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

// Linear position barrier h(x) = a^T x1 + b with a second-order exponential
// CBF constraint, solved in closed form as a halfspace projection.

#include "hsc/common.hpp"
#include "hsc/dynamics.hpp"

namespace hsc {

/// Barrier h(x) = a^T x1 + b. Depends on position only, so L_g h = 0 and the
/// barrier has relative degree two under the double integrator.
struct SafetyHalfspace {
  Vec a;
  double b = 0.0;

  /// Throws ContractError when |a| == 0 or a is non-finite.
  void validate() const;
};

/// Row K = [k1 k2] for h'' + k2 h' + k1 h >= 0.
struct EcbfGains {
  double k1 = 1.0;
  double k2 = 2.0;

  /// Throws ContractError unless s^2 + k2 s + k1 is Hurwitz.
  void validate() const;
  bool is_hurwitz() const { return k1 > 0.0 && k2 > 0.0; }
};

struct SafeInputResult {
  Vec u_cbf;
  Vec f_ref;  // u_cbf - u_ref
  bool constraint_active = false;
};

double barrier_value(const SafetyHalfspace& hs, const Vec& x1);

/// L_f h = a^T x2.
double barrier_rate(const SafetyHalfspace& hs, const Vec& x2);

/// a^T u + k1 h + k2 a^T x2. Nonnegative means u is certified safe
/// (L_f^2 h vanishes for a linear barrier on a double integrator).
double ecbf_margin(const SafetyHalfspace& hs, const EcbfGains& gains,
                   const Vec& x1, const Vec& x2, const Vec& u);

/// Closest input to u_ref that satisfies the ECBF constraint. A margin of
/// exactly zero leaves the constraint inactive.
SafeInputResult safe_input(const SafetyHalfspace& hs, const EcbfGains& gains,
                           const RobotState& state, const Vec& u_ref);

Vec reference_force(const Vec& u_cbf, const Vec& u_ref);

/// p such that -p is the faster real root of s^2 + k2 s + k1; NaN when the
/// roots are complex.
double ecbf_fast_pole(const EcbfGains& gains);

/// True when (h, h') lies in a set the ECBF keeps forward invariant:
/// h >= 0 and h' + p h >= 0 with p = ecbf_fast_pole(gains). Complex roots
/// admit no such set and always return false.
bool ecbf_admissible(double h, double h_dot, const EcbfGains& gains);

}  // namespace hsc
