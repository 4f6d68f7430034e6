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

#include "hsc/teleop/protocol.hpp"

#include <initializer_list>

#include "hsc/operator.hpp"
#include "json.hpp"

namespace hsc::teleop {

using nlohmann::json;

namespace {

json parse_object(std::string_view text) {
  json j = json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) throw ProtocolError("message is not valid JSON");
  if (!j.is_object()) throw ProtocolError("message must be a JSON object");
  return j;
}

void check_version(const json& j) {
  const auto it = j.find("v");
  if (it == j.end() || !it->is_number_integer()) {
    throw ProtocolError("missing integer field 'v'");
  }
  if (it->get<int>() != kProtocolVersion) {
    throw ProtocolError("unsupported protocol version " +
                        std::to_string(it->get<int>()));
  }
}

Vec to_vec(const json& j, const char* key, Eigen::Index dim) {
  if (!j.is_array()) throw ProtocolError(std::string(key) + " must be an array");
  if (dim >= 0 && static_cast<Eigen::Index>(j.size()) != dim) {
    throw ProtocolError(std::string(key) + " must have " + std::to_string(dim) +
                        " components");
  }
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw ProtocolError(std::string(key) + " must hold numbers");
    }
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  if (!all_finite(v)) throw ProtocolError(std::string(key) + " is not finite");
  return v;
}

json from_vec(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

double number(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw ProtocolError(std::string("missing number '") + key + "'");
  }
  return it->get<double>();
}

}  // namespace

CommandMessage parse_command(std::string_view text, Eigen::Index dim) {
  const json j = parse_object(text);
  check_version(j);
  for (const auto& [key, _] : j.items()) {
    if (key != "v" && key != "type" && key != "seq" && key != "stylus_cm" &&
        key != "x2d_mps") {
      throw ProtocolError("unknown field '" + key + "' in command");
    }
  }
  if (!j.contains("type") || j.at("type") != "command") {
    throw ProtocolError("expected type \"command\"");
  }
  if (!j.contains("seq") || !j.at("seq").is_number_integer()) {
    throw ProtocolError("command needs an integer 'seq'");
  }
  CommandMessage m;
  m.seq = j.at("seq").get<std::int64_t>();
  const bool stylus = j.contains("stylus_cm");
  const bool direct = j.contains("x2d_mps");
  if (stylus == direct) {
    throw ProtocolError("command needs exactly one of stylus_cm, x2d_mps");
  }
  if (stylus) m.stylus_cm = to_vec(j.at("stylus_cm"), "stylus_cm", dim);
  if (direct) m.x2d_mps = to_vec(j.at("x2d_mps"), "x2d_mps", dim);
  return m;
}

std::string encode_command(const CommandMessage& msg) {
  json j{{"v", kProtocolVersion}, {"type", "command"}, {"seq", msg.seq}};
  if (msg.stylus_cm) j["stylus_cm"] = from_vec(*msg.stylus_cm);
  if (msg.x2d_mps) j["x2d_mps"] = from_vec(*msg.x2d_mps);
  return j.dump();
}

Vec command_velocity(const CommandMessage& msg, double dead_zone_cm,
                     double gain_mps_per_cm) {
  if (msg.x2d_mps) return *msg.x2d_mps;
  if (msg.stylus_cm) {
    return stylus_to_velocity(*msg.stylus_cm, dead_zone_cm, gain_mps_per_cm);
  }
  throw ProtocolError("command carries no velocity");
}

std::string encode_telemetry(std::uint64_t step, const TraceSample& s) {
  json j{{"v", kProtocolVersion},
         {"type", "telemetry"},
         {"step", step},
         {"t", s.t},
         {"x1", from_vec(s.x1)},
         {"x2", from_vec(s.x2)},
         {"x2d", from_vec(s.x2d)},
         {"f", from_vec(s.f)},
         {"f_ref", from_vec(s.f_ref)},
         {"e", s.e},
         {"h", s.h},
         {"radius_sq", s.radius_sq},
         {"saturated", s.saturated}};
  return j.dump();
}

TelemetryMessage parse_telemetry(std::string_view text) {
  const json j = parse_object(text);
  check_version(j);
  if (!j.contains("type") || j.at("type") != "telemetry") {
    throw ProtocolError("expected type \"telemetry\"");
  }
  TelemetryMessage m;
  try {
    m.step = j.at("step").get<std::uint64_t>();
    m.saturated = j.at("saturated").get<bool>();
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("bad telemetry: ") + e.what());
  }
  m.t = number(j, "t");
  const auto vec = [&](const char* key) {
    if (!j.contains(key)) throw ProtocolError(std::string("missing ") + key);
    return to_vec(j.at(key), key, -1);
  };
  m.x1 = vec("x1");
  m.x2 = vec("x2");
  m.x2d = vec("x2d");
  m.f = vec("f");
  m.f_ref = vec("f_ref");
  m.e = number(j, "e");
  m.h = number(j, "h");
  m.radius_sq = number(j, "radius_sq");
  return m;
}

std::string to_string(Role role) {
  return role == Role::kController ? "controller" : "observer";
}

std::string encode_hello(Role role, const ScenarioConfig& config) {
  json j{{"v", kProtocolVersion},
         {"type", "hello"},
         {"role", to_string(role)},
         {"dt", config.dt},
         {"mode", to_string(config.mode)},
         {"dim", config.dim()},
         {"e_max", config.render.e_max},
         {"barrier", {{"a", from_vec(config.barrier.a)}, {"b", config.barrier.b}}},
         {"trace_url", "/trace.csv"}};
  return j.dump();
}

std::string encode_heartbeat(double t, Role role) {
  return json{{"v", kProtocolVersion},
              {"type", "heartbeat"},
              {"t", t},
              {"role", to_string(role)}}
      .dump();
}

std::string encode_notice(std::string_view code, std::string_view detail) {
  return json{{"v", kProtocolVersion},
              {"type", "notice"},
              {"code", code},
              {"detail", detail}}
      .dump();
}

std::string message_type(std::string_view text) {
  const json j = parse_object(text);
  check_version(j);
  const auto it = j.find("type");
  if (it == j.end() || !it->is_string()) throw ProtocolError("missing 'type'");
  return it->get<std::string>();
}

}  // namespace hsc::teleop
