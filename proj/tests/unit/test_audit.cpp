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

#include <gtest/gtest.h>

#include "hsc/audit.hpp"
#include "hsc/cbf.hpp"
#include "hsc/render.hpp"
#include "hsc/scenario.hpp"
#include "hsc/sim.hpp"

namespace hsc {
namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

ScenarioConfig load(const char* name) {
  return load_scenario(std::string(HSC_SCENARIO_DIR) + "/" + name + ".json");
}

TraceSample zero_sample(double t) {
  TraceSample s;
  s.t = t;
  s.x1 = s.x2 = s.x2d = s.u_ref = s.u_cbf = s.f_ref = s.f = Vec::Zero(2);
  s.h = 4.0;
  return s;
}

const RenderParams kWall{1.0, 0.025, 0.05, 0.0};

TEST(L2AuditTest, ZeroTraceKeepsInitialStorageAsSlack) {
  Trace trace;
  for (int i = 0; i < 10; ++i) trace.push_back(zero_sample(i * 0.05));
  trace[0].x2 = v2(1.0, 0.0);
  const AuditCheck c = audit_l2_gain(trace, kWall).checks.front();
  EXPECT_TRUE(c.passed);
  EXPECT_DOUBLE_EQ(c.worst_margin, 2.0 * 0.0125);
}

TEST(L2AuditTest, FiniteGainScenarioPassesAndInflatedForceFails) {
  const ScenarioConfig c = load("wall_approach");
  Trace trace = run_scenario(c);
  EXPECT_TRUE(audit_l2_gain(trace, c.render).passed());
  EXPECT_TRUE(
      audit_l2_gain(trace, c.render, 1e-6, Quadrature::kTrapezoidal).passed());

  for (TraceSample& s : trace) s.f *= 10.0;
  const AuditCheck bad = audit_l2_gain(trace, c.render).checks.front();
  EXPECT_FALSE(bad.passed);
  ASSERT_TRUE(bad.witness_index.has_value());
  ASSERT_TRUE(bad.witness_time.has_value());
  EXPECT_GT(trace[*bad.witness_index].f.norm(), 0.0);
  EXPECT_LT(bad.worst_margin, -1e-6);
}

// The prefix bound uses the sampled storage rate, while the zero-order-hold
// plant gains an extra (k_v/2)|dx2|^2 per step. With the tank empty and the
// force saturated, an abrupt velocity reversal exposes the gap.
TEST(L2AuditTest, SaturatedReversalBreaksTheSampledBound) {
  const SafetyHalfspace hs{v2(0, -1), 4.0};
  RobotState state{v2(0, 3.9), v2(0, 0)};
  TankState tank;
  Trace trace;
  const double v = 1.0;
  for (int i = 0; i < 2; ++i) {
    const Vec x2d = i == 0 ? v2(0, v) : v2(0, -v);
    const Vec f_ref = v2(0, -100.0);  // strongly active constraint
    auto [r, next] = render_finite_gain(f_ref, state.x2, x2d, tank, kWall);
    TraceSample s = zero_sample(i * 0.05);
    s.x1 = state.x1;
    s.x2 = state.x2;
    s.x2d = x2d;
    s.f_ref = f_ref;
    s.f = r.f;
    s.h = barrier_value(hs, state.x1);
    trace.push_back(s);
    tank = next;
    state = step(state, reference_control(x2d, state.x2, kWall.dt), kWall.dt);
  }
  // Step 1: |F|^2 = 3 v^2 against |x2d|^2 = v^2.
  EXPECT_NEAR(trace[1].f.squaredNorm(), 3.0 * v * v, 1e-12);
  const AuditCheck c = audit_l2_gain(trace, kWall).checks.front();
  EXPECT_FALSE(c.passed);
  EXPECT_NEAR(c.worst_margin, -2.0 * v * v * kWall.dt, 1e-12);
}

TEST(InvarianceAuditTest, Cases) {
  Trace trace;
  for (int i = 0; i < 5; ++i) trace.push_back(zero_sample(i * 0.05));
  EXPECT_TRUE(audit_forward_invariance(trace, {v2(0, -1), 4.0}).passed());

  trace[3].x1 = v2(0, 4.5);
  const AuditCheck c =
      audit_forward_invariance(trace, {v2(0, -1), 4.0}).checks.front();
  EXPECT_FALSE(c.passed);
  EXPECT_EQ(c.witness_index, 3u);
  EXPECT_DOUBLE_EQ(c.worst_margin, -0.5);
}

TEST(CharacteristicsAuditTest, WallApproachPasses) {
  const ScenarioConfig c = load("wall_approach");
  const Trace trace = run_scenario(c);
  const AuditReport r = audit_characteristics(trace, c.barrier, c.render, c.mode);
  EXPECT_TRUE(r.passed()) << format_report(r);
  ASSERT_EQ(r.checks.size(), 4u);

  std::size_t retreat = 0, stationary = 0;
  for (const TraceSample& s : trace) {
    if (s.t >= 11.0 && s.t <= 13.0) {
      ++retreat;
      EXPECT_EQ(s.f, Vec::Zero(2)) << "t=" << s.t;
      EXPECT_GT(c.barrier.a.dot(s.x2), 0.0);
    }
    if (s.t >= 18.0 && s.t <= 20.0) {
      ++stationary;
      EXPECT_EQ(s.f, Vec::Zero(2)) << "t=" << s.t;
      EXPECT_EQ(s.x2d, Vec::Zero(2));
    }
  }
  EXPECT_EQ(retreat, 41u);
  EXPECT_EQ(stationary, 41u);
}

TEST(CharacteristicsAuditTest, TankMemoryWitness) {
  const ScenarioConfig c = load("wall_approach_tank");
  const Trace trace = run_scenario(c);
  const AuditReport r = audit_characteristics(trace, c.barrier, c.render, c.mode);
  EXPECT_TRUE(r.passed()) << format_report(r);
  const AuditCheck* c4 = r.find("C4_tank_memory");
  ASSERT_NE(c4, nullptr);
  ASSERT_TRUE(c4->witness_index.has_value());
  EXPECT_GT(c4->worst_margin, 0.0);

  // Without a tank there is nothing to remember.
  const ScenarioConfig plain = load("wall_approach");
  const AuditReport r0 = audit_characteristics(run_scenario(plain),
                                               plain.barrier, plain.render,
                                               plain.mode);
  EXPECT_FALSE(r0.find("C4_tank_memory")->witness_index.has_value());
}

TEST(CharacteristicsAuditTest, PassivityRendersForceWithoutReference) {
  const ScenarioConfig c = load("wall_approach_passivity");
  const Trace trace = run_scenario(c);
  const AuditReport r = audit_characteristics(trace, c.barrier, c.render, c.mode);
  const AuditCheck* c1 = r.find("C1_zero_when_far_or_rest");
  ASSERT_NE(c1, nullptr);
  EXPECT_FALSE(c1->passed);
  ASSERT_TRUE(c1->witness_index.has_value());
  EXPECT_EQ(trace[*c1->witness_index].f_ref, Vec::Zero(2));
}

TEST(CharacteristicsAuditTest, NegativeControls) {
  const ScenarioConfig c = load("wall_approach");
  Trace trace = run_scenario(c);

  Trace flipped = trace;
  bool flipped_any = false;
  for (TraceSample& s : flipped) {
    if (s.f.norm() > 1e-6) {
      s.f = -s.f;
      flipped_any = true;
    }
  }
  ASSERT_TRUE(flipped_any);
  EXPECT_FALSE(audit_characteristics(flipped, c.barrier, c.render, c.mode)
                   .find("C2_sign_and_retreat")
                   ->passed);

  for (TraceSample& s : trace) {
    if (s.t >= 18.0 && s.t <= 20.0) s.f = v2(0.0, -0.01);
  }
  EXPECT_FALSE(audit_characteristics(trace, c.barrier, c.render, c.mode)
                   .find("C1_zero_when_far_or_rest")
                   ->passed);
}

TEST(AuditReportTest, FormatAndLookup) {
  AuditReport r;
  AuditCheck a;
  a.name = "x";
  a.passed = false;
  a.witness_index = 2;
  a.witness_time = 0.1;
  r.checks.push_back(a);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.find("y"), nullptr);
  EXPECT_NE(format_report(r).find("FAIL x"), std::string::npos);
  EXPECT_NE(format_report(r).find("#2"), std::string::npos);
}

}  // namespace
}  // namespace hsc
