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

#include <gtest/gtest.h>

#include "hsc/scenario.hpp"
#include "json.hpp"

namespace hsc {
namespace {

const char* kMinimal = R"({
  "dt": 0.05, "duration": 1.0,
  "initial": {"x1": [0, 0]},
  "barrier": {"a": [0, -1], "b": 4},
  "render": {"mode": "finite_gain", "k": 1.0},
  "operator": {"kind": "scripted", "intention": {"kind": "constant", "value": [0, 0.5]}}
})";

TEST(ScenarioParseTest, MinimalDefaults) {
  const ScenarioConfig c = parse_scenario_text(kMinimal);
  EXPECT_EQ(c.dim(), 2);
  EXPECT_EQ(c.steps(), 20u);
  EXPECT_DOUBLE_EQ(c.render.k_v, 0.025);  // dt / (2k)
  EXPECT_DOUBLE_EQ(c.render.dt, 0.05);
  EXPECT_EQ(c.mode, RenderMode::kFiniteGain);
  EXPECT_EQ(c.initial.x2, Vec::Zero(2));
  EXPECT_DOUBLE_EQ(c.gains.k1, 1.0);
  EXPECT_DOUBLE_EQ(c.gains.k2, 2.0);
  EXPECT_EQ(c.plant_input, PlantInput::kReference);
}

TEST(ScenarioParseTest, RejectsUnknownKeys) {
  auto doc = nlohmann::json::parse(kMinimal);
  doc["render"]["kv"] = 0.025;
  EXPECT_THROW(parse_scenario(doc), ConfigError);
  doc = nlohmann::json::parse(kMinimal);
  doc["speed"] = 1;
  EXPECT_THROW(parse_scenario(doc), ConfigError);
}

TEST(ScenarioParseTest, RejectsBadValues) {
  auto doc = nlohmann::json::parse(kMinimal);
  doc["render"]["mode"] = "passivity";
  doc["render"]["k_v"] = 0.075;  // ratio 1.5
  EXPECT_THROW(parse_scenario(doc).validate(), ConfigError);

  doc = nlohmann::json::parse(kMinimal);
  doc["duration"] = 1.01;  // not a whole number of steps
  EXPECT_THROW(parse_scenario(doc).validate(), ConfigError);

  doc = nlohmann::json::parse(kMinimal);
  doc["barrier"]["a"] = {0, -1, 0};
  EXPECT_THROW(parse_scenario(doc).validate(), ConfigError);

  EXPECT_THROW(parse_scenario_text("{not json"), ConfigError);
  EXPECT_THROW(load_scenario("/nonexistent/file.json"), ConfigError);
}

TEST(ScenarioParseTest, JsonRoundTrip) {
  auto doc = nlohmann::json::parse(kMinimal);
  doc["disturbance"] = {{"kind", "noise"}, {"stddev", {0.1, 0.2}}, {"cutoff_hz", 2.0}};
  doc["seed"] = 42;
  const ScenarioConfig a = parse_scenario(doc);
  const ScenarioConfig b = parse_scenario(scenario_to_json(a));
  EXPECT_EQ(scenario_to_json(a), scenario_to_json(b));
  EXPECT_EQ(b.seed, 42u);
  EXPECT_EQ(b.disturbance.kind, DisturbanceKind::kNoise);
}

TEST(DisturbanceTest, StepAndNoiseAreDeterministic) {
  DisturbanceSpec step{DisturbanceKind::kStep, 1.0,
                       (Vec(2) << 0.2, 0.3).finished(), 1.0};
  DisturbanceGenerator g(step, 2, 0.05, 0);
  EXPECT_EQ(g.sample(0.5), Vec::Zero(2));
  EXPECT_DOUBLE_EQ(g.sample(1.0)[1], 0.3);

  DisturbanceSpec noise{DisturbanceKind::kNoise, 0.0,
                        (Vec(2) << 0.5, 0.5).finished(), 2.0};
  DisturbanceGenerator n1(noise, 2, 0.05, 9), n2(noise, 2, 0.05, 9),
      n3(noise, 2, 0.05, 10);
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    const Vec a = n1.sample(i * 0.05), b = n2.sample(i * 0.05),
              c = n3.sample(i * 0.05);
    EXPECT_EQ(a, b);
    differs = differs || a != c;
  }
  EXPECT_TRUE(differs);
}

}  // namespace
}  // namespace hsc
