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

// Wire messages for the live service. One JSON object per WebSocket text
// frame, every object carrying "v" (schema version) and "type".
//
//   client -> server
//     {"v":1,"type":"command","seq":7,"stylus_cm":[0,5]}
//     {"v":1,"type":"command","seq":8,"x2d_mps":[0,1.0]}
//   server -> client
//     {"v":1,"type":"hello","role":"controller"|"observer","dt":..,"mode":..,
//      "dim":2,"e_max":..,"barrier":{"a":[..],"b":..},"trace_url":"/trace.csv"}
//     {"v":1,"type":"telemetry","step":..,"t":..,"x1":[..],"x2":[..],
//      "x2d":[..],"f":[..],"f_ref":[..],"e":..,"h":..,"radius_sq":..,
//      "saturated":false}
//     {"v":1,"type":"heartbeat","t":..,"role":..}
//     {"v":1,"type":"notice","code":"read_only"|"stale_seq","detail":".."}

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hsc/common.hpp"
#include "hsc/scenario.hpp"
#include "hsc/sim.hpp"

namespace hsc::teleop {

inline constexpr int kProtocolVersion = 1;

/// Malformed or unsupported message; the connection is closed with the
/// WebSocket protocol-error code.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandMessage {
  std::int64_t seq = 0;
  // Exactly one of these is set.
  std::optional<Vec> stylus_cm;
  std::optional<Vec> x2d_mps;
};

/// Parses a client command. dim is the session's state dimension.
CommandMessage parse_command(std::string_view text, Eigen::Index dim);
std::string encode_command(const CommandMessage& msg);

/// Commanded velocity for a command: stylus displacements go through the
/// dead-zone mapping, direct velocities pass through.
Vec command_velocity(const CommandMessage& msg, double dead_zone_cm,
                     double gain_mps_per_cm);

struct TelemetryMessage {
  std::uint64_t step = 0;
  double t = 0.0;
  Vec x1, x2, x2d, f, f_ref;
  double e = 0.0;
  double h = 0.0;
  double radius_sq = 0.0;
  bool saturated = false;
};

std::string encode_telemetry(std::uint64_t step, const TraceSample& s);
TelemetryMessage parse_telemetry(std::string_view text);

enum class Role { kController, kObserver };
std::string to_string(Role role);

std::string encode_hello(Role role, const ScenarioConfig& config);
std::string encode_heartbeat(double t, Role role);
std::string encode_notice(std::string_view code, std::string_view detail);

/// Returns the "type" field of any server or client message, or throws.
std::string message_type(std::string_view text);

}  // namespace hsc::teleop
