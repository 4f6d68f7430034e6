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

#include "hsc/operator.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace hsc {

namespace {

void check_knots(const std::vector<double>& times, std::size_t n_values,
                 const char* what) {
  if (times.empty()) {
    throw ConfigError(std::string(what) + ": needs at least one knot");
  }
  if (times.size() != n_values) {
    throw ConfigError(std::string(what) + ": times and values differ in length");
  }
  if (times.front() < 0.0) {
    throw ConfigError(std::string(what) + ": knot times must be >= 0");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ConfigError(std::string(what) + ": knot times must increase");
    }
  }
}

void check_dims(const std::vector<Vec>& vs, Eigen::Index d, const char* what) {
  for (const Vec& v : vs) {
    if (v.size() != d) {
      throw ConfigError(std::string(what) + ": inconsistent vector dimension");
    }
    if (!all_finite(v)) {
      throw ConfigError(std::string(what) + ": non-finite value");
    }
  }
}

// Index of the last knot with times[i] <= t, or -1 before the first knot.
std::ptrdiff_t knot_index(const std::vector<double>& times, double t) {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  return std::distance(times.begin(), it) - 1;
}

Vec piecewise_linear(const IntentionProfile& p, double t) {
  if (p.repeat && p.times.size() > 1 && t > p.times.back()) {
    t = std::fmod(t, p.times.back());
  }
  const std::ptrdiff_t i = knot_index(p.times, t);
  if (i < 0) return p.values.front();
  const auto idx = static_cast<std::size_t>(i);
  if (idx + 1 >= p.times.size()) return p.values.back();
  const double t0 = p.times[idx];
  const double t1 = p.times[idx + 1];
  const double w = (t - t0) / (t1 - t0);
  return p.values[idx] + (p.values[idx + 1] - p.values[idx]) * w;
}

}  // namespace

Eigen::Index IntentionProfile::dim() const {
  switch (kind) {
    case IntentionKind::kConstant: return value.size();
    case IntentionKind::kPiecewise:
      return values.empty() ? 0 : values.front().size();
    case IntentionKind::kSinusoid: return amplitude.size();
    case IntentionKind::kStylusTrace:
      return displacement_cm.empty() ? 0 : displacement_cm.front().size();
  }
  return 0;
}

void IntentionProfile::validate() const {
  if (!(dead_zone_cm >= 0.0) || !std::isfinite(gain_mps_per_cm)) {
    throw ConfigError("intention: dead_zone_cm >= 0 and finite gain required");
  }
  switch (kind) {
    case IntentionKind::kConstant:
      if (value.size() == 0 || !all_finite(value)) {
        throw ConfigError("intention constant: value must be a finite vector");
      }
      break;
    case IntentionKind::kPiecewise:
      check_knots(times, values.size(), "intention piecewise");
      check_dims(values, values.front().size(), "intention piecewise");
      break;
    case IntentionKind::kSinusoid:
      if (amplitude.size() == 0 || offset.size() != amplitude.size()) {
        throw ConfigError("intention sinusoid: offset and amplitude must match");
      }
      if (!all_finite(amplitude) || !all_finite(offset) ||
          !std::isfinite(omega) || !std::isfinite(phase)) {
        throw ConfigError("intention sinusoid: non-finite parameter");
      }
      break;
    case IntentionKind::kStylusTrace:
      check_knots(times, displacement_cm.size(), "intention stylus_trace");
      check_dims(displacement_cm, displacement_cm.front().size(),
                 "intention stylus_trace");
      break;
  }
}

void OperatorModel::validate() const {
  if (!(k_h >= 0.0) || !std::isfinite(k_h)) {
    throw ConfigError("operator: k_h must be finite and >= 0");
  }
  intention.validate();
}

Vec intention_at(const IntentionProfile& p, double t) {
  if (!(t >= 0.0)) throw ContractError("intention_at: t must be >= 0");
  switch (p.kind) {
    case IntentionKind::kConstant:
      return p.value;
    case IntentionKind::kPiecewise:
      return piecewise_linear(p, t);
    case IntentionKind::kSinusoid:
      return p.offset + p.amplitude * std::sin(p.omega * t + p.phase);
    case IntentionKind::kStylusTrace: {
      const std::ptrdiff_t i = knot_index(p.times, t);
      const Vec& d = i < 0 ? p.displacement_cm.front()
                           : p.displacement_cm[static_cast<std::size_t>(i)];
      return stylus_to_velocity(d, p);
    }
  }
  return {};
}

Vec operator_command(const OperatorModel& model, double t, const Vec& f) {
  Vec r = intention_at(model.intention, t);
  if (model.kind == OperatorKind::kScripted || model.k_h == 0.0) return r;
  require_same_dim(r, f, "operator_command");
  return r - model.k_h * f;
}

Vec stylus_to_velocity(const Vec& displacement_cm, double dead_zone_cm,
                       double gain_mps_per_cm) {
  Vec out(displacement_cm.size());
  for (Eigen::Index i = 0; i < displacement_cm.size(); ++i) {
    const double d = displacement_cm[i];
    out[i] = std::abs(d) < dead_zone_cm ? 0.0 : gain_mps_per_cm * d;
  }
  return out;
}

Vec stylus_to_velocity(const Vec& displacement_cm,
                       const IntentionProfile& profile) {
  return stylus_to_velocity(displacement_cm, profile.dead_zone_cm,
                            profile.gain_mps_per_cm);
}

std::string to_string(IntentionKind kind) {
  switch (kind) {
    case IntentionKind::kConstant: return "constant";
    case IntentionKind::kPiecewise: return "piecewise";
    case IntentionKind::kSinusoid: return "sinusoid";
    case IntentionKind::kStylusTrace: return "stylus_trace";
  }
  return "unknown";
}

IntentionKind parse_intention_kind(const std::string& text) {
  for (IntentionKind k : {IntentionKind::kConstant, IntentionKind::kPiecewise,
                          IntentionKind::kSinusoid,
                          IntentionKind::kStylusTrace}) {
    if (text == to_string(k)) return k;
  }
  throw ConfigError("unknown intention kind '" + text + "'");
}

std::string to_string(OperatorKind kind) {
  return kind == OperatorKind::kScripted ? "scripted" : "admittance";
}

OperatorKind parse_operator_kind(const std::string& text) {
  if (text == "scripted") return OperatorKind::kScripted;
  if (text == "admittance") return OperatorKind::kAdmittance;
  throw ConfigError("unknown operator kind '" + text + "'");
}

}  // namespace hsc
