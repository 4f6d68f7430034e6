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

// AArch64 only; NEON is baseline there, so no runtime probe is needed.

#include <arm_neon.h>

#include "hsc/kernels/batch.hpp"
#include "hsc/kernels/formulas.hpp"

namespace hsc::kernels {

namespace {

constexpr std::size_t kLanes = 2;

void passivity_neon(const double* dd, const double* sd, const double* ss,
                    double* out, std::size_t n, double k, double k_v,
                    double dt) {
  const PassivityCoeffs c = passivity_coeffs(k, k_v, dt);
  const float64x2_t scale = vdupq_n_f64(c.scale);
  const float64x2_t cross = vdupq_n_f64(c.cross);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float64x2_t acc =
        vsubq_f64(vld1q_f64(dd + i), vmulq_f64(cross, vld1q_f64(sd + i)));
    acc = vaddq_f64(acc, vmulq_f64(cross, vld1q_f64(ss + i)));
    vst1q_f64(out + i, vmulq_f64(scale, acc));
  }
  for (; i < n; ++i) out[i] = passivity_radius_sq(c, dd[i], sd[i], ss[i]);
}

void finite_gain_neon(const double* dd, const double* sd, const double* ss,
                      const double* e, double* out, std::size_t n, double k,
                      double k_v, double dt) {
  const FiniteGainCoeffs c = finite_gain_coeffs(k, k_v, dt);
  const float64x2_t scale = vdupq_n_f64(c.scale);
  const float64x2_t cross = vdupq_n_f64(c.cross);
  const float64x2_t tank = vdupq_n_f64(c.tank);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float64x2_t acc = vaddq_f64(vmulq_f64(tank, vld1q_f64(e + i)),
                                vld1q_f64(dd + i));
    acc = vsubq_f64(acc, vmulq_f64(cross, vld1q_f64(sd + i)));
    acc = vaddq_f64(acc, vmulq_f64(cross, vld1q_f64(ss + i)));
    vst1q_f64(out + i, vmulq_f64(scale, acc));
  }
  for (; i < n; ++i) {
    out[i] = finite_gain_radius_sq(c, dd[i], sd[i], ss[i], e[i]);
  }
}

void scale_neon(const double* f_sq, const double* r2, double* out,
                std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t vf = vld1q_f64(f_sq + i);
    const float64x2_t vr = vld1q_f64(r2 + i);
    const uint64x2_t inside = vcleq_f64(vf, vr);
    const uint64x2_t empty = vcleq_f64(vr, zero);
    float64x2_t s = vsqrtq_f64(vdivq_f64(vr, vf));
    s = vbslq_f64(empty, zero, s);
    s = vbslq_f64(inside, one, s);
    vst1q_f64(out + i, s);
  }
  for (; i < n; ++i) out[i] = origin_ball_scale(f_sq[i], r2[i]);
}

void l2_neon(const double* f_sq, const double* x2d_sq, double* out,
             std::size_t n, double k, double dt) {
  const double inv_k2 = 1.0 / (k * k);
  const float64x2_t vinv = vdupq_n_f64(inv_k2);
  const float64x2_t vdt = vdupq_n_f64(dt);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t d = vsubq_f64(vld1q_f64(f_sq + i),
                                    vmulq_f64(vld1q_f64(x2d_sq + i), vinv));
    vst1q_f64(out + i, vmulq_f64(d, vdt));
  }
  for (; i < n; ++i) out[i] = l2_increment(f_sq[i], x2d_sq[i], inv_k2, dt);
}

}  // namespace

namespace detail {
const KernelTable kNeonTable{passivity_neon, finite_gain_neon, scale_neon,
                             l2_neon};
}  // namespace detail

}  // namespace hsc::kernels
