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

#include <chrono>
#include <thread>

#include <gtest/gtest.h>

#include "hsc/audit.hpp"
#include "hsc/teleop/session.hpp"
#include "hsc/trace_io.hpp"

namespace hsc::teleop {
namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

ScenarioConfig wall() {
  return load_scenario(std::string(HSC_SCENARIO_DIR) + "/wall_approach.json");
}

CommandMessage stylus(std::int64_t seq, double dx, double dy) {
  CommandMessage m;
  m.seq = seq;
  m.stylus_cm = v2(dx, dy);
  return m;
}

TEST(SessionTest, StartsEmptyAndHoldsStillWithoutClient) {
  TeleopSession s(wall());
  EXPECT_TRUE(s.snapshot().empty());
  for (int i = 0; i < 20; ++i) {
    const TraceSample t = s.tick();
    EXPECT_EQ(t.x2d, Vec::Zero(2));
    EXPECT_EQ(t.f, Vec::Zero(2));
  }
  EXPECT_EQ(s.snapshot().size(), 20u);
  EXPECT_DOUBLE_EQ(s.sim_time(), 1.0);
}

TEST(SessionTest, StylusCommandAppliesNextStep) {
  TeleopSession s(wall());
  s.tick();
  s.submit(stylus(1, 0, 5));
  const TraceSample t = s.tick();
  EXPECT_NEAR((t.x2d - v2(0, 1.0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((s.tick().x2 - v2(0, 1.0)).norm(), 0.0, 1e-12);
}

TEST(SessionTest, LatestCommandWins) {
  TeleopSession s(wall());
  s.submit_velocity(v2(0.1, 0));
  s.submit_velocity(v2(0.2, 0));
  s.submit_velocity(v2(0.3, 0));
  EXPECT_EQ(s.tick().x2d, v2(0.3, 0));
}

TEST(SessionTest, DeadManDecaysLinearlyAfterTimeout) {
  TeleopSession s(wall());
  s.submit_velocity(v2(0, 1.0));
  EXPECT_EQ(s.tick().x2d, v2(0, 1.0));  // fresh
  std::vector<double> y;
  for (int i = 1; i <= 16; ++i) y.push_back(s.tick().x2d[1]);
  // Stale steps 1..9 hold, 10..14 ramp down by 0.2, then zero.
  for (int i = 0; i < 9; ++i) EXPECT_DOUBLE_EQ(y[i], 1.0) << i;
  EXPECT_NEAR(y[9], 0.8, 1e-15);
  EXPECT_NEAR(y[10], 0.6, 1e-15);
  EXPECT_NEAR(y[11], 0.4, 1e-15);
  EXPECT_NEAR(y[12], 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(y[13], 0.0);
  EXPECT_DOUBLE_EQ(y[15], 0.0);
  // A fresh command restores control immediately.
  s.submit_velocity(v2(0, 0.5));
  EXPECT_EQ(s.tick().x2d, v2(0, 0.5));
}

TEST(SessionTest, SnapshotsArePrefixConsistent) {
  TeleopSession s(wall());
  for (int i = 0; i < 5; ++i) s.tick();
  const Trace a = s.snapshot();
  s.submit_velocity(v2(0, 0.4));
  for (int i = 0; i < 5; ++i) s.tick();
  const Trace b = s.snapshot();
  ASSERT_EQ(a.size(), 5u);
  ASSERT_EQ(b.size(), 10u);
  EXPECT_EQ(trace_to_string(a, TraceFormat::kCsv),
            trace_to_string(Trace(b.begin(), b.begin() + 5), TraceFormat::kCsv));
}

TEST(SessionTest, MatchesOfflineReplayAndPassesL2Audit) {
  const ScenarioConfig c = wall();
  TeleopSession s(c);
  for (int i = 0; i < 400; ++i) {
    if (i % 3 == 0) {
      const double phase = 0.01 * i;
      s.submit(stylus(i, 3.0 * std::sin(phase), 4.0 * std::cos(0.5 * phase)));
    }
    s.tick();
  }
  const Trace live = s.snapshot();
  std::vector<Vec> x2d;
  for (const TraceSample& t : live) x2d.push_back(t.x2d);
  EXPECT_EQ(trace_to_string(live, TraceFormat::kCsv),
            trace_to_string(replay_commands(c, x2d), TraceFormat::kCsv));
  EXPECT_TRUE(audit_l2_gain(live, c.render).passed());
}

TEST(SessionTest, FixedRateLoopAdvancesExactlyDtPerFrame) {
  SessionOptions opt;
  opt.rate_scale = 20.0;  // 2.5 ms per frame
  TeleopSession s(wall(), opt);
  std::vector<double> times;
  const auto t0 = std::chrono::steady_clock::now();
  std::stop_source stop;
  s.run(stop.get_token(),
        [&](std::uint64_t step, const TraceSample& t) {
          EXPECT_EQ(step, times.size());
          times.push_back(t.t);
        },
        40);
  const double wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_EQ(times.size(), 40u);
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_NEAR(times[i], 0.05 * i, 1e-12);
  }
  EXPECT_GE(wall_s, 0.09);  // 40 frames at 2.5 ms, minus the first
  EXPECT_EQ(s.steps(), 40u);
}

TEST(SessionTest, RejectsWrongDimension) {
  TeleopSession s(wall());
  CommandMessage m;
  m.seq = 1;
  m.x2d_mps = Vec::Zero(3);
  EXPECT_THROW(s.submit(m), ProtocolError);
  EXPECT_THROW(TeleopSession(wall(), {10, 0}), ConfigError);
}

}  // namespace
}  // namespace hsc::teleop
