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

#include "hsc/kernels/batch.hpp"
#include "hsc/kernels/formulas.hpp"

namespace hsc::kernels {

namespace {

void passivity_scalar(const double* dd, const double* sd, const double* ss,
                      double* out, std::size_t n, double k, double k_v,
                      double dt) {
  const PassivityCoeffs c = passivity_coeffs(k, k_v, dt);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = passivity_radius_sq(c, dd[i], sd[i], ss[i]);
  }
}

void finite_gain_scalar(const double* dd, const double* sd, const double* ss,
                        const double* e, double* out, std::size_t n, double k,
                        double k_v, double dt) {
  const FiniteGainCoeffs c = finite_gain_coeffs(k, k_v, dt);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = finite_gain_radius_sq(c, dd[i], sd[i], ss[i], e[i]);
  }
}

void scale_scalar(const double* f_sq, const double* r2, double* out,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = origin_ball_scale(f_sq[i], r2[i]);
  }
}

void l2_scalar(const double* f_sq, const double* x2d_sq, double* out,
               std::size_t n, double k, double dt) {
  const double inv_k2 = 1.0 / (k * k);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = l2_increment(f_sq[i], x2d_sq[i], inv_k2, dt);
  }
}

}  // namespace

namespace detail {
const KernelTable kScalarTable{passivity_scalar, finite_gain_scalar,
                               scale_scalar, l2_scalar};
}  // namespace detail

}  // namespace hsc::kernels
