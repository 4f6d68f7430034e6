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
#include <random>

#include <gtest/gtest.h>

#include "../oracles/oracles.hpp"
#include "hsc/render.hpp"

namespace hsc {
namespace {

Vec v1(double a) { return Vec::Constant(1, a); }
Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

const RenderParams kWall{1.0, 0.025, 0.05, 0.0};

TEST(ValidateParamsTest, RatioBounds) {
  EXPECT_NO_THROW(validate_params(kWall, RenderMode::kPassivity));
  EXPECT_NO_THROW(validate_params(kWall, RenderMode::kFiniteGain));
  const RenderParams r15{1.0, 0.075, 0.05, 0.0};
  EXPECT_NO_THROW(validate_params(r15, RenderMode::kFiniteGain));
  try {
    validate_params(r15, RenderMode::kPassivity);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
  const RenderParams r25{1.0, 0.125, 0.05, 0.0};
  EXPECT_THROW(validate_params(r25, RenderMode::kFiniteGain), ConfigError);
  const RenderParams zero{1.0, 0.0, 0.05, 0.0};
  EXPECT_NO_THROW(validate_params(zero, RenderMode::kPassivity));
  EXPECT_NO_THROW(validate_params(zero, RenderMode::kFiniteGain));
  EXPECT_THROW(validate_params({0.0, 0.025, 0.05, 0.0}, RenderMode::kNone),
               ConfigError);
}

TEST(PassivityBallTest, Examples) {
  FeasibleBall b = passivity_ball(v1(1), v1(2), kWall);
  EXPECT_DOUBLE_EQ(b.center[0], 1.0);
  EXPECT_NEAR(b.radius_sq, 0.5, 1e-15);

  b = passivity_ball(v1(0), v1(0), kWall);
  EXPECT_DOUBLE_EQ(b.center[0], 0.0);
  EXPECT_DOUBLE_EQ(b.radius_sq, 0.0);

  b = passivity_ball(v1(0.5), v1(1), kWall);
  EXPECT_DOUBLE_EQ(b.center[0], 0.5);
  EXPECT_NEAR(b.radius_sq, 0.125, 1e-15);
}

TEST(PassivityBallTest, RatioAboveBoundIsRejectedBeforeProjection) {
  // Ratio 3: x2=1, x2d=3 would give (1/4)(9 - 36 + 12) < 0, but the ratio
  // check fires first.
  const RenderParams bad{1.0, 0.15, 0.05, 0.0};
  EXPECT_THROW(passivity_ball(v1(1), v1(3), bad), ConfigError);
}

TEST(FiniteGainBallTest, Examples) {
  FeasibleBall b = finite_gain_ball(v1(1), v1(2), 0.0, kWall);
  EXPECT_DOUBLE_EQ(b.center[0], 0.0);
  EXPECT_NEAR(b.radius_sq, 3.0, 1e-14);

  b = finite_gain_ball(v1(0), v1(0), 0.0, kWall);
  EXPECT_DOUBLE_EQ(b.radius_sq, 0.0);

  b = finite_gain_ball(v1(1), v1(2), 0.05, kWall);
  EXPECT_NEAR(b.radius_sq, 5.0, 1e-14);
}

TEST(FiniteGainBallTest, BoundaryOfTheConstraint) {
  // Every F on the sphere makes eps = -e/dt exactly.
  const Vec x2 = v2(0.3, -0.7), x2d = v2(1.1, 0.4);
  const double e = 0.02;
  const FeasibleBall b = finite_gain_ball(x2, x2d, e, kWall);
  const Vec f = v2(std::sqrt(b.radius_sq), 0.0);
  const double vdot = hsc_test::oracle_storage_rate(x2, x2d, 0.025, 0.05);
  const double eps = x2d.squaredNorm() / 2.0 - vdot - 0.5 * f.squaredNorm();
  EXPECT_NEAR(eps, -e / 0.05, 1e-12);
}

TEST(ProjectToBallTest, Examples) {
  const FeasibleBall unit{v1(0), 1.0};
  EXPECT_EQ(project_to_ball(v1(0.5), unit)[0], 0.5);
  EXPECT_NEAR(project_to_ball(v1(-21), {v1(0), 3.0})[0], -std::sqrt(3.0),
              1e-12);
  EXPECT_NEAR(project_to_ball(v1(-21), {v1(1), 0.5})[0], 1.0 - std::sqrt(0.5),
              1e-12);
  EXPECT_NEAR(project_to_ball(v1(-21), {v1(1), 0.5})[0], 0.2929, 1e-4);
}

TEST(RenderPassiveTest, Examples) {
  RenderResult r = render_passive(v1(0), v1(0.5), v1(1), kWall);
  EXPECT_NEAR(r.f[0], 0.5 - std::sqrt(0.125), 1e-12);
  EXPECT_NEAR(std::abs(r.f[0]), 0.1464, 1e-4);
  EXPECT_TRUE(r.saturated);
  EXPECT_FALSE(r.eps.has_value());

  r = render_passive(v1(0), v1(0), v1(0), kWall);
  EXPECT_EQ(r.f[0], 0.0);

  r = render_passive(v1(-21), v1(1), v1(2), kWall);
  EXPECT_NEAR(r.f[0], 0.2929, 1e-4);
  EXPECT_LT(r.f[0] * -21.0, 0.0);  // opposite sign to f_ref
}

TEST(RenderFiniteGainTest, SaturatedProjectionExhaustsFlow) {
  const auto [r, tank] =
      render_finite_gain(v1(-21), v1(1), v1(2), {0.0, 0.0}, kWall);
  EXPECT_NEAR(r.f[0], -std::sqrt(3.0), 1e-12);
  ASSERT_TRUE(r.eps.has_value());
  EXPECT_NEAR(*r.eps, 0.0, 1e-12);
  EXPECT_NEAR(tank.e, 0.0, 1e-12);
  EXPECT_TRUE(r.saturated);
}

TEST(RenderFiniteGainTest, ZeroReferenceGivesZeroForceAndCharges) {
  const RenderParams p{1.0, 0.025, 0.05, 0.05};
  const auto [r, tank] =
      render_finite_gain(v2(0, 0), v2(0.5, 0), v2(1, 0), {0.01, 0.0}, p);
  EXPECT_EQ(r.f, Vec::Zero(2));
  EXPECT_FALSE(r.saturated);
  // eps = 1/2 - 0.025*0.5*0.5/0.05 = 0.375
  EXPECT_NEAR(*r.eps, 0.375, 1e-14);
  EXPECT_NEAR(tank.e, 0.01 + 0.375 * 0.05, 1e-14);
}

TEST(RenderFiniteGainTest, ZeroReferenceInPassivityCase) {
  // The passivity drawback state gives F = 0 here.
  const auto [r, tank] =
      render_finite_gain(v1(0), v1(0.5), v1(1), {0.0, 0.0}, kWall);
  EXPECT_EQ(r.f[0], 0.0);
  EXPECT_GE(*r.eps, 0.0);
}

TEST(RenderFiniteGainTest, TankSaturatesAtCap) {
  const RenderParams p{1.0, 0.025, 0.05, 0.05};
  const auto [r, tank] =
      render_finite_gain(v1(0), v1(0), v1(2), {0.05, 0.0}, p);
  EXPECT_GT(*r.eps, 0.0);
  EXPECT_DOUBLE_EQ(tank.e, 0.05);
}

TEST(RenderFiniteGainTest, RejectsTankOutsideRange) {
  const RenderParams p{1.0, 0.025, 0.05, 0.05};
  EXPECT_THROW(render_finite_gain(v1(0), v1(0), v1(0), {0.2, 0.0}, p),
               ContractError);
  EXPECT_THROW(render_finite_gain(v1(0), v1(0), v1(0), {-0.1, 0.0}, p),
               ContractError);
}

TEST(TankStepTest, Examples) {
  EXPECT_DOUBLE_EQ(tank_step({0.0, 0.0}, 1.0, 0.05, 0.05).e, 0.05);
  EXPECT_NEAR(tank_step({0.02, 0.0}, -0.4, 0.05, 0.05).e, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(tank_step({0.03, 0.0}, 0.0, 0.05, 0.05).e, 0.03);
  EXPECT_THROW(tank_step({0.02, 0.0}, -1.0, 0.05, 0.05), InternalError);
}

TEST(RenderModeTest, ParseRoundTrip) {
  for (RenderMode m :
       {RenderMode::kNone, RenderMode::kPassivity, RenderMode::kFiniteGain}) {
    EXPECT_EQ(parse_render_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_render_mode("passive"), ConfigError);
}

// Property: |F| is non-decreasing in the tank energy.
TEST(RenderFiniteGainTest, MonotoneInTankEnergy) {
  const RenderParams p{1.0, 0.025, 0.05, 0.05};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const Vec x2 = v2(uni(rng), uni(rng)), x2d = v2(uni(rng), uni(rng));
    const Vec f_ref = 10.0 * v2(uni(rng), uni(rng));
    double prev = -1.0;
    for (double e : {0.0, 0.01, 0.025, 0.05}) {
      const double fn =
          render_finite_gain(f_ref, x2, x2d, {e, 0.0}, p).first.f.norm();
      EXPECT_GE(fn, prev - 1e-12);
      prev = fn;
    }
  }
}

// Property: the rendered force satisfies the original constraint.
TEST(RenderTest, OutputSatisfiesOriginalConstraints) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const Vec x2 = v2(uni(rng), uni(rng)), x2d = v2(uni(rng), uni(rng));
    const Vec f_ref = 10.0 * v2(uni(rng), uni(rng));
    const double vdot = hsc_test::oracle_storage_rate(x2, x2d, 0.025, 0.05);

    const Vec fp = render_passive(f_ref, x2, x2d, kWall).f;
    EXPECT_GE(x2d.dot(fp) - vdot - fp.squaredNorm(), -1e-9);

    const auto [r, tank] = render_finite_gain(f_ref, x2, x2d, {0.0, 0.0}, kWall);
    EXPECT_GE(*r.eps, -1e-9);
    EXPECT_GE(tank.e, 0.0);
  }
}

}  // namespace
}  // namespace hsc
