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

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hsc/kernels/batch.hpp"
#include "hsc/kernels/formulas.hpp"

namespace hsc::kernels {
namespace {

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Inputs {
  std::vector<double> dd, sd, ss, e, f_sq, r2;
};

Inputs random_inputs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  Inputs in;
  for (std::size_t i = 0; i < n; ++i) {
    const double a0 = uni(rng), a1 = uni(rng), b0 = uni(rng), b1 = uni(rng);
    in.dd.push_back(b0 * b0 + b1 * b1);
    in.sd.push_back(a0 * b0 + a1 * b1);
    in.ss.push_back(a0 * a0 + a1 * a1);
    in.e.push_back(std::abs(uni(rng)) / 60.0);
    in.f_sq.push_back(i % 7 == 0 ? 0.0 : uni(rng) * uni(rng) + 9.0 * (i % 2));
    in.r2.push_back(i % 5 == 0 ? 0.0 : (i % 11 == 0 ? -1e-3 : uni(rng) + 3.0));
  }
  return in;
}

TEST(KernelDispatchTest, ScalarAlwaysAvailable) {
  EXPECT_TRUE(isa_available(Isa::kScalar));
  EXPECT_TRUE(isa_available(active_isa()));
  EXPECT_EQ(isa_name(Isa::kScalar), "scalar");
}

// Every available ISA must reproduce the scalar reference bit for bit,
// including the tails that do not fill a vector register.
TEST(KernelEquivalenceTest, BitIdenticalToScalar) {
  const KernelTable& ref = table_for(Isa::kScalar);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 1001u}) {
    const Inputs in = random_inputs(n, 100 + n);
    for (Isa isa : available()) {
      const KernelTable& t = table_for(isa);
      std::vector<double> a(n), b(n);

      ref.passivity_radius_sq(in.dd.data(), in.sd.data(), in.ss.data(),
                              a.data(), n, 1.3, 0.02, 0.05);
      t.passivity_radius_sq(in.dd.data(), in.sd.data(), in.ss.data(),
                            b.data(), n, 1.3, 0.02, 0.05);
      EXPECT_TRUE(bit_equal(a, b)) << isa_name(isa) << " passivity n=" << n;

      ref.finite_gain_radius_sq(in.dd.data(), in.sd.data(), in.ss.data(),
                                in.e.data(), a.data(), n, 0.7, 0.1, 0.05);
      t.finite_gain_radius_sq(in.dd.data(), in.sd.data(), in.ss.data(),
                              in.e.data(), b.data(), n, 0.7, 0.1, 0.05);
      EXPECT_TRUE(bit_equal(a, b)) << isa_name(isa) << " finite gain n=" << n;

      ref.origin_ball_scale(in.f_sq.data(), in.r2.data(), a.data(), n);
      t.origin_ball_scale(in.f_sq.data(), in.r2.data(), b.data(), n);
      EXPECT_TRUE(bit_equal(a, b)) << isa_name(isa) << " scale n=" << n;

      ref.l2_increments(in.f_sq.data(), in.dd.data(), a.data(), n, 1.0, 0.05);
      t.l2_increments(in.f_sq.data(), in.dd.data(), b.data(), n, 1.0, 0.05);
      EXPECT_TRUE(bit_equal(a, b)) << isa_name(isa) << " l2 n=" << n;
    }
  }
}

TEST(KernelScalarTest, MatchesSingleElementFormulas) {
  const Inputs in = random_inputs(50, 9);
  std::vector<double> out(50);
  table_for(Isa::kScalar)
      .finite_gain_radius_sq(in.dd.data(), in.sd.data(), in.ss.data(),
                             in.e.data(), out.data(), 50, 1.0, 0.025, 0.05);
  const FiniteGainCoeffs c = finite_gain_coeffs(1.0, 0.025, 0.05);
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_EQ(out[i], finite_gain_radius_sq(c, in.dd[i], in.sd[i], in.ss[i],
                                            in.e[i]));
  }
}

TEST(KernelScalarTest, OriginBallScaleCases) {
  EXPECT_EQ(origin_ball_scale(1.0, 4.0), 1.0);
  EXPECT_EQ(origin_ball_scale(0.0, 0.0), 1.0);
  EXPECT_EQ(origin_ball_scale(4.0, 0.0), 0.0);
  EXPECT_EQ(origin_ball_scale(4.0, -1.0), 0.0);
  EXPECT_DOUBLE_EQ(origin_ball_scale(4.0, 1.0), 0.5);
}

TEST(KernelSpanTest, LengthMismatchThrows) {
  std::vector<double> a(4), b(3), out(4);
  EXPECT_THROW(origin_ball_scale(a, b, out), std::invalid_argument);
}

}  // namespace
}  // namespace hsc::kernels
