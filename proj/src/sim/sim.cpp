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

#include "hsc/sim.hpp"

#include <cmath>
#include <sstream>

#include "hsc/cbf.hpp"
#include "hsc/dynamics.hpp"

namespace hsc {

namespace {

ScenarioConfig validated(const ScenarioConfig& config) {
  config.validate();
  return config;
}

bool sample_finite(const TraceSample& s) {
  return all_finite(s.x1) && all_finite(s.x2) && all_finite(s.x2d) &&
         all_finite(s.u_ref) && all_finite(s.u_cbf) && all_finite(s.f_ref) &&
         all_finite(s.f) && std::isfinite(s.eps) && std::isfinite(s.e) &&
         std::isfinite(s.h) && std::isfinite(s.radius_sq);
}

}  // namespace

ScenarioAborted::ScenarioAborted(std::size_t step, Trace partial,
                                 const std::string& cause)
    : std::runtime_error("scenario aborted at step " + std::to_string(step) +
                         ": " + cause),
      step_(step),
      partial_(std::move(partial)) {}

ClosedLoop::ClosedLoop(const ScenarioConfig& config)
    : config_(validated(config)),
      state_(config_.initial),
      tank_{config_.e0, 0.0},
      last_force_(Vec::Zero(config_.dim())),
      disturbance_(config_.disturbance, config_.dim(), config_.dt,
                   config_.seed) {}

double ClosedLoop::time() const {
  return static_cast<double>(step_) * config_.dt;
}

TraceSample ClosedLoop::advance(const Vec& x2d) {
  require_same_dim(x2d, state_.x2, "ClosedLoop::advance");
  if (!all_finite(x2d)) throw ContractError("ClosedLoop::advance: non-finite x2d");
  const ScenarioConfig& c = config_;

  TraceSample s;
  s.t = time();
  s.x1 = state_.x1;
  s.x2 = state_.x2;
  s.x2d = x2d;
  s.h = barrier_value(c.barrier, state_.x1);
  s.e = tank_.e;
  s.u_ref = reference_control(x2d, state_.x2, c.dt);
  const SafeInputResult safe = safe_input(c.barrier, c.gains, state_, s.u_ref);
  s.u_cbf = safe.u_cbf;
  s.f_ref = safe.f_ref;

  switch (c.mode) {
    case RenderMode::kNone:
      s.f = Vec::Zero(x2d.size());
      break;
    case RenderMode::kPassivity: {
      const RenderResult r = render_passive(s.f_ref, s.x2, x2d, c.render);
      s.f = r.f;
      s.saturated = r.saturated;
      s.radius_sq = r.radius_sq;
      break;
    }
    case RenderMode::kFiniteGain: {
      auto [r, next] = render_finite_gain(s.f_ref, s.x2, x2d, tank_, c.render);
      s.f = r.f;
      s.saturated = r.saturated;
      s.radius_sq = r.radius_sq;
      s.eps = *r.eps;
      tank_ = next;
      break;
    }
  }

  const Vec& u_plant = c.plant_input == PlantInput::kSafe ? s.u_cbf : s.u_ref;
  state_ = step(state_, u_plant + disturbance_.sample(s.t), c.dt);
  last_force_ = s.f;
  ++step_;
  if (!sample_finite(s)) throw InternalError("non-finite trace sample");
  return s;
}

Trace run_scenario(const ScenarioConfig& config) {
  ClosedLoop loop(config);
  const std::size_t n = loop.config().steps();
  Trace trace;
  trace.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      const Vec x2d =
          operator_command(loop.config().op, loop.time(), loop.last_force());
      trace.push_back(loop.advance(x2d));
    } catch (const std::exception& e) {
      throw ScenarioAborted(i, std::move(trace), e.what());
    }
  }
  return trace;
}

Trace replay_commands(const ScenarioConfig& config,
                      std::span<const Vec> x2d_sequence) {
  ClosedLoop loop(config);
  Trace trace;
  trace.reserve(x2d_sequence.size());
  for (std::size_t i = 0; i < x2d_sequence.size(); ++i) {
    try {
      trace.push_back(loop.advance(x2d_sequence[i]));
    } catch (const std::exception& e) {
      throw ScenarioAborted(i, std::move(trace), e.what());
    }
  }
  return trace;
}

OpenLoopRender rerender(const Trace& trace, RenderMode mode,
                        const RenderParams& params, double e0) {
  validate_params(params, mode);
  OpenLoopRender out;
  out.f.reserve(trace.size());
  TankState tank{e0, 0.0};
  for (const TraceSample& s : trace) {
    out.e.push_back(tank.e);
    switch (mode) {
      case RenderMode::kNone:
        out.f.push_back(Vec::Zero(s.f_ref.size()));
        out.radius_sq.push_back(0.0);
        break;
      case RenderMode::kPassivity: {
        const RenderResult r = render_passive(s.f_ref, s.x2, s.x2d, params);
        out.f.push_back(r.f);
        out.radius_sq.push_back(r.radius_sq);
        break;
      }
      case RenderMode::kFiniteGain: {
        auto [r, next] = render_finite_gain(s.f_ref, s.x2, s.x2d, tank, params);
        out.f.push_back(r.f);
        out.radius_sq.push_back(r.radius_sq);
        tank = next;
        break;
      }
    }
  }
  return out;
}

}  // namespace hsc
