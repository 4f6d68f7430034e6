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

#include "hsc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace hsc {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.contains(item.key())) {
      throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
  }
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) {
    throw ConfigError(where + ": missing key '" + key + "'");
  }
  return obj.at(key);
}

double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback,
                 const std::string& where) {
  return obj.contains(key) ? get_number(obj.at(key), where + "." + key)
                           : fallback;
}

Vec get_vec(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(where + ": expected a non-empty number array");
  }
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = get_number(v[i], where);
  }
  return out;
}

std::vector<double> get_numbers(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(get_number(x, where));
  return out;
}

std::vector<Vec> get_vecs(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<Vec> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(get_vec(x, where));
  return out;
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + ": expected a string");
  return v.get<std::string>();
}

json vec_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

IntentionProfile parse_intention(const json& j) {
  const std::string where = "operator.intention";
  const IntentionKind kind =
      parse_intention_kind(get_string(need(j, "kind", where), where + ".kind"));
  IntentionProfile p;
  p.kind = kind;
  switch (kind) {
    case IntentionKind::kConstant:
      check_keys(j, {"kind", "value"}, where);
      p.value = get_vec(need(j, "value", where), where + ".value");
      break;
    case IntentionKind::kPiecewise:
      check_keys(j, {"kind", "times", "values", "repeat"}, where);
      p.times = get_numbers(need(j, "times", where), where + ".times");
      p.values = get_vecs(need(j, "values", where), where + ".values");
      if (j.contains("repeat")) {
        if (!j.at("repeat").is_boolean()) {
          throw ConfigError(where + ".repeat: expected a boolean");
        }
        p.repeat = j.at("repeat").get<bool>();
      }
      break;
    case IntentionKind::kSinusoid:
      check_keys(j, {"kind", "offset", "amplitude", "omega", "phase"}, where);
      p.amplitude = get_vec(need(j, "amplitude", where), where + ".amplitude");
      p.offset = j.contains("offset")
                     ? get_vec(j.at("offset"), where + ".offset")
                     : Vec::Zero(p.amplitude.size());
      p.omega = number_or(j, "omega", 1.0, where);
      p.phase = number_or(j, "phase", 0.0, where);
      break;
    case IntentionKind::kStylusTrace:
      check_keys(j,
                 {"kind", "times", "displacement_cm", "dead_zone_cm",
                  "gain_mps_per_cm"},
                 where);
      p.times = get_numbers(need(j, "times", where), where + ".times");
      p.displacement_cm = get_vecs(need(j, "displacement_cm", where),
                                   where + ".displacement_cm");
      p.dead_zone_cm = number_or(j, "dead_zone_cm", 1.0, where);
      p.gain_mps_per_cm = number_or(j, "gain_mps_per_cm", 0.2, where);
      break;
  }
  return p;
}

json intention_json(const IntentionProfile& p) {
  json j;
  j["kind"] = to_string(p.kind);
  switch (p.kind) {
    case IntentionKind::kConstant:
      j["value"] = vec_json(p.value);
      break;
    case IntentionKind::kPiecewise: {
      j["times"] = p.times;
      json values = json::array();
      for (const Vec& v : p.values) values.push_back(vec_json(v));
      j["values"] = values;
      j["repeat"] = p.repeat;
      break;
    }
    case IntentionKind::kSinusoid:
      j["offset"] = vec_json(p.offset);
      j["amplitude"] = vec_json(p.amplitude);
      j["omega"] = p.omega;
      j["phase"] = p.phase;
      break;
    case IntentionKind::kStylusTrace: {
      j["times"] = p.times;
      json values = json::array();
      for (const Vec& v : p.displacement_cm) values.push_back(vec_json(v));
      j["displacement_cm"] = values;
      j["dead_zone_cm"] = p.dead_zone_cm;
      j["gain_mps_per_cm"] = p.gain_mps_per_cm;
      break;
    }
  }
  return j;
}

DisturbanceKind parse_disturbance_kind(const std::string& text) {
  if (text == "none") return DisturbanceKind::kNone;
  if (text == "step") return DisturbanceKind::kStep;
  if (text == "noise") return DisturbanceKind::kNoise;
  throw ConfigError("unknown disturbance kind '" + text + "'");
}

PlantInput parse_plant_input(const std::string& text) {
  if (text == "reference") return PlantInput::kReference;
  if (text == "safe") return PlantInput::kSafe;
  throw ConfigError("unknown plant_input '" + text +
                    "' (expected reference or safe)");
}

}  // namespace

std::string to_string(DisturbanceKind kind) {
  switch (kind) {
    case DisturbanceKind::kNone: return "none";
    case DisturbanceKind::kStep: return "step";
    case DisturbanceKind::kNoise: return "noise";
  }
  return "unknown";
}

std::string to_string(PlantInput input) {
  return input == PlantInput::kReference ? "reference" : "safe";
}

std::size_t ScenarioConfig::steps() const {
  const double n = duration / dt;
  const double rounded = std::round(n);
  if (std::abs(n - rounded) > 1e-9 * std::max(1.0, n)) {
    throw ConfigError("scenario: duration/dt is not an integer step count");
  }
  return static_cast<std::size_t>(rounded);
}

void ScenarioConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("scenario: dt must be positive");
  }
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw ConfigError("scenario: duration must be >= 0");
  }
  (void)steps();
  const Eigen::Index d = dim();
  if (d < 1) throw ConfigError("scenario: initial.x1 must be non-empty");
  if (initial.x2.size() != d || barrier.a.size() != d) {
    throw ConfigError("scenario: initial state and barrier normal must share "
                      "one dimension");
  }
  if (!all_finite(initial.x1) || !all_finite(initial.x2)) {
    throw ConfigError("scenario: initial state must be finite");
  }
  try {
    barrier.validate();
    gains.validate();
  } catch (const ContractError& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  if (render.dt != dt) {
    throw ConfigError("scenario: render.dt must equal dt");
  }
  validate_params(render, mode);
  if (!(e0 >= 0.0) || e0 > render.e_max) {
    throw ConfigError("scenario: e0 must lie in [0, e_max]");
  }
  op.validate();
  if (op.intention.dim() != d) {
    throw ConfigError("scenario: intention dimension does not match state");
  }
  if (disturbance.kind != DisturbanceKind::kNone) {
    if (disturbance.magnitude.size() != d || !all_finite(disturbance.magnitude)) {
      throw ConfigError("scenario: disturbance vector dimension mismatch");
    }
    if (disturbance.kind == DisturbanceKind::kNoise &&
        !(disturbance.cutoff_hz > 0.0)) {
      throw ConfigError("scenario: noise cutoff_hz must be positive");
    }
  }
}

ScenarioConfig parse_scenario(const json& doc) {
  check_keys(doc,
             {"name", "dt", "duration", "initial", "barrier", "ecbf", "render",
              "operator", "disturbance", "plant_input", "seed"},
             "scenario");
  ScenarioConfig c;
  if (doc.contains("name")) c.name = get_string(doc.at("name"), "name");
  c.dt = get_number(need(doc, "dt", "scenario"), "dt");
  c.duration = get_number(need(doc, "duration", "scenario"), "duration");

  const json& init = need(doc, "initial", "scenario");
  check_keys(init, {"x1", "x2"}, "initial");
  c.initial.x1 = get_vec(need(init, "x1", "initial"), "initial.x1");
  c.initial.x2 = init.contains("x2") ? get_vec(init.at("x2"), "initial.x2")
                                     : Vec::Zero(c.initial.x1.size());

  const json& bar = need(doc, "barrier", "scenario");
  check_keys(bar, {"a", "b"}, "barrier");
  c.barrier.a = get_vec(need(bar, "a", "barrier"), "barrier.a");
  c.barrier.b = get_number(need(bar, "b", "barrier"), "barrier.b");

  if (doc.contains("ecbf")) {
    const json& g = doc.at("ecbf");
    check_keys(g, {"k1", "k2"}, "ecbf");
    c.gains.k1 = number_or(g, "k1", 1.0, "ecbf");
    c.gains.k2 = number_or(g, "k2", 2.0, "ecbf");
  }

  const json& r = need(doc, "render", "scenario");
  check_keys(r, {"mode", "k", "k_v", "e_max", "e0"}, "render");
  c.mode = parse_render_mode(get_string(need(r, "mode", "render"), "render.mode"));
  c.render.dt = c.dt;
  c.render.k = number_or(r, "k", 1.0, "render");
  if (!(c.render.k > 0.0)) throw ConfigError("render.k must be positive");
  c.render.k_v = number_or(r, "k_v", c.dt / (2.0 * c.render.k), "render");
  c.render.e_max = number_or(r, "e_max", 0.0, "render");
  c.e0 = number_or(r, "e0", 0.0, "render");

  const json& o = need(doc, "operator", "scenario");
  check_keys(o, {"kind", "k_h", "intention"}, "operator");
  c.op.kind = parse_operator_kind(get_string(need(o, "kind", "operator"),
                                             "operator.kind"));
  c.op.k_h = number_or(o, "k_h", 0.0, "operator");
  c.op.intention = parse_intention(need(o, "intention", "operator"));

  if (doc.contains("disturbance")) {
    const json& d = doc.at("disturbance");
    check_keys(d, {"kind", "onset", "magnitude", "stddev", "cutoff_hz"},
               "disturbance");
    c.disturbance.kind = parse_disturbance_kind(
        get_string(need(d, "kind", "disturbance"), "disturbance.kind"));
    c.disturbance.onset = number_or(d, "onset", 0.0, "disturbance");
    c.disturbance.cutoff_hz = number_or(d, "cutoff_hz", 1.0, "disturbance");
    if (c.disturbance.kind == DisturbanceKind::kStep) {
      c.disturbance.magnitude =
          get_vec(need(d, "magnitude", "disturbance"), "disturbance.magnitude");
    } else if (c.disturbance.kind == DisturbanceKind::kNoise) {
      c.disturbance.magnitude =
          get_vec(need(d, "stddev", "disturbance"), "disturbance.stddev");
    }
  }
  if (doc.contains("plant_input")) {
    c.plant_input =
        parse_plant_input(get_string(doc.at("plant_input"), "plant_input"));
  }
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("seed: expected a nonnegative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  c.validate();
  return c;
}

ScenarioConfig parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: malformed JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

json scenario_to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["dt"] = c.dt;
  j["duration"] = c.duration;
  j["initial"] = {{"x1", vec_json(c.initial.x1)}, {"x2", vec_json(c.initial.x2)}};
  j["barrier"] = {{"a", vec_json(c.barrier.a)}, {"b", c.barrier.b}};
  j["ecbf"] = {{"k1", c.gains.k1}, {"k2", c.gains.k2}};
  j["render"] = {{"mode", to_string(c.mode)},
                 {"k", c.render.k},
                 {"k_v", c.render.k_v},
                 {"e_max", c.render.e_max},
                 {"e0", c.e0}};
  j["operator"] = {{"kind", to_string(c.op.kind)},
                   {"k_h", c.op.k_h},
                   {"intention", intention_json(c.op.intention)}};
  json d = {{"kind", to_string(c.disturbance.kind)}};
  if (c.disturbance.kind == DisturbanceKind::kStep) {
    d["onset"] = c.disturbance.onset;
    d["magnitude"] = vec_json(c.disturbance.magnitude);
  } else if (c.disturbance.kind == DisturbanceKind::kNoise) {
    d["stddev"] = vec_json(c.disturbance.magnitude);
    d["cutoff_hz"] = c.disturbance.cutoff_hz;
  }
  j["disturbance"] = d;
  j["plant_input"] = to_string(c.plant_input);
  j["seed"] = c.seed;
  return j;
}

DisturbanceGenerator::DisturbanceGenerator(const DisturbanceSpec& spec,
                                           Eigen::Index dim, double dt,
                                           std::uint64_t seed)
    : spec_(spec), dim_(dim), rng_(seed), filtered_(Vec::Zero(dim)) {
  if (spec_.kind == DisturbanceKind::kNoise) {
    alpha_ = std::exp(-2.0 * std::numbers::pi * spec_.cutoff_hz * dt);
    input_gain_ = std::sqrt((1.0 + alpha_) / (1.0 - alpha_)) * (1.0 - alpha_);
  }
}

Vec DisturbanceGenerator::sample(double t) {
  switch (spec_.kind) {
    case DisturbanceKind::kNone:
      return Vec::Zero(dim_);
    case DisturbanceKind::kStep:
      return t >= spec_.onset ? spec_.magnitude : Vec::Zero(dim_);
    case DisturbanceKind::kNoise: {
      for (Eigen::Index i = 0; i < dim_; ++i) {
        const double white = normal_(rng_) * spec_.magnitude[i];
        filtered_[i] = alpha_ * filtered_[i] + input_gain_ * white;
      }
      return filtered_;
    }
  }
  return Vec::Zero(dim_);
}

}  // namespace hsc
