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

// Element formulas shared by the scalar kernels and the per-step renderer.
// The SIMD variants reproduce the same operation order, so with
// -ffp-contract=off every ISA returns bit-identical results.

#include <cmath>

namespace hsc::kernels {

struct PassivityCoeffs {
  double scale;  // 1 / (4 k^2)
  double cross;  // 4 k k_v / dt
};

struct FiniteGainCoeffs {
  double scale;  // 1 / k^2
  double cross;  // 2 k k_v / dt
  double tank;   // 2 k / dt
};

inline PassivityCoeffs passivity_coeffs(double k, double k_v, double dt) {
  return {1.0 / (4.0 * k * k), 4.0 * k * k_v / dt};
}

inline FiniteGainCoeffs finite_gain_coeffs(double k, double k_v, double dt) {
  return {1.0 / (k * k), 2.0 * k * k_v / dt, 2.0 * k / dt};
}

/// dd = |x2d|^2, sd = x2^T x2d, ss = |x2|^2.
inline double passivity_radius_sq(const PassivityCoeffs& c, double dd,
                                  double sd, double ss) {
  return c.scale * ((dd - c.cross * sd) + c.cross * ss);
}

inline double finite_gain_radius_sq(const FiniteGainCoeffs& c, double dd,
                                    double sd, double ss, double e) {
  return c.scale * (((c.tank * e + dd) - c.cross * sd) + c.cross * ss);
}

/// Factor in [0, 1] that maps f onto the origin ball of squared radius r2.
inline double origin_ball_scale(double f_sq, double r2) {
  if (f_sq <= r2) return 1.0;
  if (r2 <= 0.0) return 0.0;
  return std::sqrt(r2 / f_sq);
}

/// One left-Riemann term of sum |F|^2 dt - (1/k^2) sum |x2d|^2 dt.
inline double l2_increment(double f_sq, double x2d_sq, double inv_k2,
                           double dt) {
  return (f_sq - x2d_sq * inv_k2) * dt;
}

}  // namespace hsc::kernels
