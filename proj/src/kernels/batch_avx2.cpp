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

// Compiled with -mavx2 only; callers reach it through runtime dispatch.

#include <immintrin.h>

#include "hsc/kernels/batch.hpp"
#include "hsc/kernels/formulas.hpp"

namespace hsc::kernels {

namespace {

constexpr std::size_t kLanes = 4;

void passivity_avx2(const double* dd, const double* sd, const double* ss,
                    double* out, std::size_t n, double k, double k_v,
                    double dt) {
  const PassivityCoeffs c = passivity_coeffs(k, k_v, dt);
  const __m256d scale = _mm256_set1_pd(c.scale);
  const __m256d cross = _mm256_set1_pd(c.cross);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vdd = _mm256_loadu_pd(dd + i);
    const __m256d vsd = _mm256_loadu_pd(sd + i);
    const __m256d vss = _mm256_loadu_pd(ss + i);
    __m256d acc = _mm256_sub_pd(vdd, _mm256_mul_pd(cross, vsd));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(cross, vss));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(scale, acc));
  }
  for (; i < n; ++i) out[i] = passivity_radius_sq(c, dd[i], sd[i], ss[i]);
}

void finite_gain_avx2(const double* dd, const double* sd, const double* ss,
                      const double* e, double* out, std::size_t n, double k,
                      double k_v, double dt) {
  const FiniteGainCoeffs c = finite_gain_coeffs(k, k_v, dt);
  const __m256d scale = _mm256_set1_pd(c.scale);
  const __m256d cross = _mm256_set1_pd(c.cross);
  const __m256d tank = _mm256_set1_pd(c.tank);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vdd = _mm256_loadu_pd(dd + i);
    const __m256d vsd = _mm256_loadu_pd(sd + i);
    const __m256d vss = _mm256_loadu_pd(ss + i);
    const __m256d ve = _mm256_loadu_pd(e + i);
    __m256d acc = _mm256_add_pd(_mm256_mul_pd(tank, ve), vdd);
    acc = _mm256_sub_pd(acc, _mm256_mul_pd(cross, vsd));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(cross, vss));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(scale, acc));
  }
  for (; i < n; ++i) {
    out[i] = finite_gain_radius_sq(c, dd[i], sd[i], ss[i], e[i]);
  }
}

void scale_avx2(const double* f_sq, const double* r2, double* out,
                std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vf = _mm256_loadu_pd(f_sq + i);
    const __m256d vr = _mm256_loadu_pd(r2 + i);
    const __m256d inside = _mm256_cmp_pd(vf, vr, _CMP_LE_OQ);
    const __m256d empty = _mm256_cmp_pd(vr, zero, _CMP_LE_OQ);
    __m256d s = _mm256_sqrt_pd(_mm256_div_pd(vr, vf));
    s = _mm256_blendv_pd(s, zero, empty);
    s = _mm256_blendv_pd(s, one, inside);
    _mm256_storeu_pd(out + i, s);
  }
  for (; i < n; ++i) out[i] = origin_ball_scale(f_sq[i], r2[i]);
}

void l2_avx2(const double* f_sq, const double* x2d_sq, double* out,
             std::size_t n, double k, double dt) {
  const double inv_k2 = 1.0 / (k * k);
  const __m256d vinv = _mm256_set1_pd(inv_k2);
  const __m256d vdt = _mm256_set1_pd(dt);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vf = _mm256_loadu_pd(f_sq + i);
    const __m256d vx = _mm256_loadu_pd(x2d_sq + i);
    const __m256d d = _mm256_sub_pd(vf, _mm256_mul_pd(vx, vinv));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vdt));
  }
  for (; i < n; ++i) out[i] = l2_increment(f_sq[i], x2d_sq[i], inv_k2, dt);
}

}  // namespace

namespace detail {
const KernelTable kAvx2Table{passivity_avx2, finite_gain_avx2, scale_avx2,
                             l2_avx2};
}  // namespace detail

}  // namespace hsc::kernels
