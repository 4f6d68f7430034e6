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

// Batched structure-of-arrays kernels with runtime ISA dispatch.
//
// Every kernel has a scalar reference and optional AVX2 / NEON variants.
// The active table is picked once from CPU features; HSC_SIMD=scalar|avx2|neon
// overrides the choice (unavailable requests fall back to scalar).

#include <cstddef>
#include <span>
#include <string_view>

namespace hsc::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();

struct KernelTable {
  void (*passivity_radius_sq)(const double* dd, const double* sd,
                              const double* ss, double* out, std::size_t n,
                              double k, double k_v, double dt);
  void (*finite_gain_radius_sq)(const double* dd, const double* sd,
                                const double* ss, const double* e, double* out,
                                std::size_t n, double k, double k_v,
                                double dt);
  void (*origin_ball_scale)(const double* f_sq, const double* r2, double* out,
                            std::size_t n);
  void (*l2_increments)(const double* f_sq, const double* x2d_sq, double* out,
                        std::size_t n, double k, double dt);
};

/// Table for a specific ISA; throws std::invalid_argument if unavailable.
const KernelTable& table_for(Isa isa);
const KernelTable& active_table();

// Span front-ends over the active table. All spans must share one length.

void passivity_radius_sq(std::span<const double> dd,
                         std::span<const double> sd,
                         std::span<const double> ss, std::span<double> out,
                         double k, double k_v, double dt);

void finite_gain_radius_sq(std::span<const double> dd,
                           std::span<const double> sd,
                           std::span<const double> ss,
                           std::span<const double> e, std::span<double> out,
                           double k, double k_v, double dt);

void origin_ball_scale(std::span<const double> f_sq,
                       std::span<const double> r2, std::span<double> out);

void l2_increments(std::span<const double> f_sq,
                   std::span<const double> x2d_sq, std::span<double> out,
                   double k, double dt);

namespace detail {
extern const KernelTable kScalarTable;
#if defined(HSC_HAVE_AVX2_KERNELS)
extern const KernelTable kAvx2Table;
#endif
#if defined(HSC_HAVE_NEON_KERNELS)
extern const KernelTable kNeonTable;
#endif
}  // namespace detail

}  // namespace hsc::kernels
