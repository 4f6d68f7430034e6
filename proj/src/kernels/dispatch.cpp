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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hsc/kernels/batch.hpp"

namespace hsc::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(HSC_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(HSC_HAVE_NEON_KERNELS)
      return true;
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("HSC_SIMD")) {
    const std::string want(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (want == isa_name(isa)) {
        return isa_available(isa) ? isa : Isa::kScalar;
      }
    }
  }
  if (isa_available(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

void check_len(std::size_t expect, std::size_t got) {
  if (expect != got) {
    throw std::invalid_argument("kernels: span length mismatch");
  }
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

const KernelTable& table_for(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernels: ISA " + std::string(isa_name(isa)) +
                                " not available");
  }
  switch (isa) {
#if defined(HSC_HAVE_AVX2_KERNELS)
    case Isa::kAvx2: return detail::kAvx2Table;
#endif
#if defined(HSC_HAVE_NEON_KERNELS)
    case Isa::kNeon: return detail::kNeonTable;
#endif
    default: return detail::kScalarTable;
  }
}

const KernelTable& active_table() {
  static const KernelTable& table = table_for(active_isa());
  return table;
}

void passivity_radius_sq(std::span<const double> dd,
                         std::span<const double> sd,
                         std::span<const double> ss, std::span<double> out,
                         double k, double k_v, double dt) {
  check_len(out.size(), dd.size());
  check_len(out.size(), sd.size());
  check_len(out.size(), ss.size());
  active_table().passivity_radius_sq(dd.data(), sd.data(), ss.data(),
                                     out.data(), out.size(), k, k_v, dt);
}

void finite_gain_radius_sq(std::span<const double> dd,
                           std::span<const double> sd,
                           std::span<const double> ss,
                           std::span<const double> e, std::span<double> out,
                           double k, double k_v, double dt) {
  check_len(out.size(), dd.size());
  check_len(out.size(), sd.size());
  check_len(out.size(), ss.size());
  check_len(out.size(), e.size());
  active_table().finite_gain_radius_sq(dd.data(), sd.data(), ss.data(),
                                       e.data(), out.data(), out.size(), k,
                                       k_v, dt);
}

void origin_ball_scale(std::span<const double> f_sq,
                       std::span<const double> r2, std::span<double> out) {
  check_len(out.size(), f_sq.size());
  check_len(out.size(), r2.size());
  active_table().origin_ball_scale(f_sq.data(), r2.data(), out.data(),
                                   out.size());
}

void l2_increments(std::span<const double> f_sq,
                   std::span<const double> x2d_sq, std::span<double> out,
                   double k, double dt) {
  check_len(out.size(), f_sq.size());
  check_len(out.size(), x2d_sq.size());
  active_table().l2_increments(f_sq.data(), x2d_sq.data(), out.data(),
                               out.size(), k, dt);
}

}  // namespace hsc::kernels
