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

#include "hsc/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hsc/kernels/formulas.hpp"

namespace hsc {

namespace {

constexpr double kSnapTolerance = 1e-12;
constexpr double kTankTolerance = 1e-9;
constexpr double kRoundoff = 1e-11;

double guard_radius(double radius_sq, const char* what) {
  if (!std::isfinite(radius_sq)) {
    throw InfeasibleError(std::string(what) + ": non-finite radius");
  }
  if (radius_sq >= 0.0) return radius_sq;
  if (radius_sq >= -kSnapTolerance) return 0.0;
  std::ostringstream msg;
  msg << what << ": empty feasible set (radius_sq = " << radius_sq
      << "); parameter validation bypassed?";
  throw InfeasibleError(msg.str());
}

}  // namespace

std::string to_string(RenderMode mode) {
  switch (mode) {
    case RenderMode::kNone: return "none";
    case RenderMode::kPassivity: return "passivity";
    case RenderMode::kFiniteGain: return "finite_gain";
  }
  return "unknown";
}

RenderMode parse_render_mode(const std::string& text) {
  if (text == "none") return RenderMode::kNone;
  if (text == "passivity") return RenderMode::kPassivity;
  if (text == "finite_gain") return RenderMode::kFiniteGain;
  throw ConfigError("unknown render mode '" + text +
                    "' (expected none, passivity or finite_gain)");
}

double ratio_bound(RenderMode mode) {
  switch (mode) {
    case RenderMode::kPassivity: return 1.0;
    case RenderMode::kFiniteGain: return 2.0;
    case RenderMode::kNone: break;
  }
  return std::numeric_limits<double>::infinity();
}

void validate_params(const RenderParams& params, RenderMode mode) {
  if (!(params.k > 0.0) || !std::isfinite(params.k)) {
    throw ConfigError("render params: k must be positive and finite");
  }
  if (!(params.dt > 0.0) || !std::isfinite(params.dt)) {
    throw ConfigError("render params: dt must be positive and finite");
  }
  if (!(params.k_v >= 0.0) || !std::isfinite(params.k_v)) {
    throw ConfigError("render params: k_v must be nonnegative");
  }
  if (!(params.e_max >= 0.0) || !std::isfinite(params.e_max)) {
    throw ConfigError("render params: e_max must be nonnegative");
  }
  const double bound = ratio_bound(mode);
  const double ratio = params.ratio();
  if (ratio > bound) {
    std::ostringstream msg;
    msg << "render params: k*k_v/dt = " << ratio << " exceeds the "
        << to_string(mode) << " bound " << bound;
    throw ConfigError(msg.str());
  }
}

FeasibleBall passivity_ball(const Vec& x2, const Vec& x2d,
                            const RenderParams& params) {
  validate_params(params, RenderMode::kPassivity);
  require_same_dim(x2, x2d, "passivity_ball");
  const auto c =
      kernels::passivity_coeffs(params.k, params.k_v, params.dt);
  const double r2 = kernels::passivity_radius_sq(
      c, x2d.squaredNorm(), x2.dot(x2d), x2.squaredNorm());
  return {x2d / (2.0 * params.k), guard_radius(r2, "passivity_ball")};
}

FeasibleBall finite_gain_ball(const Vec& x2, const Vec& x2d, double e,
                              const RenderParams& params) {
  validate_params(params, RenderMode::kFiniteGain);
  require_same_dim(x2, x2d, "finite_gain_ball");
  if (!(e >= 0.0)) throw ContractError("finite_gain_ball: tank energy < 0");
  const auto c =
      kernels::finite_gain_coeffs(params.k, params.k_v, params.dt);
  const double r2 = kernels::finite_gain_radius_sq(
      c, x2d.squaredNorm(), x2.dot(x2d), x2.squaredNorm(), e);
  return {Vec::Zero(x2.size()), guard_radius(r2, "finite_gain_ball")};
}

Vec project_to_ball(const Vec& f_ref, const FeasibleBall& ball) {
  require_same_dim(f_ref, ball.center, "project_to_ball");
  if (ball.radius_sq < 0.0) {
    throw ContractError("project_to_ball: negative radius");
  }
  const Vec offset = f_ref - ball.center;
  const double dist_sq = offset.squaredNorm();
  if (dist_sq <= ball.radius_sq) return f_ref;
  if (ball.radius_sq == 0.0) return ball.center;
  return ball.center +
         offset * (std::sqrt(ball.radius_sq) / std::sqrt(dist_sq));
}

RenderResult render_passive(const Vec& f_ref, const Vec& x2, const Vec& x2d,
                            const RenderParams& params) {
  const FeasibleBall ball = passivity_ball(x2, x2d, params);
  RenderResult out;
  out.f = project_to_ball(f_ref, ball);
  out.saturated = out.f != f_ref;
  out.radius_sq = ball.radius_sq;
  return out;
}

std::pair<RenderResult, TankState> render_finite_gain(
    const Vec& f_ref, const Vec& x2, const Vec& x2d, const TankState& tank,
    const RenderParams& params) {
  if (!(tank.e >= 0.0) || tank.e > params.e_max + kTankTolerance) {
    throw ContractError("render_finite_gain: tank energy outside [0, e_max]");
  }
  const FeasibleBall ball = finite_gain_ball(x2, x2d, tank.e, params);
  RenderResult out;
  out.f = project_to_ball(f_ref, ball);
  out.saturated = out.f != f_ref;
  out.radius_sq = ball.radius_sq;
  const double supply = x2d.squaredNorm() / (2.0 * params.k);
  const double vdot = storage_rate(x2, x2d, params.k_v, params.dt);
  const double cost = 0.5 * params.k * out.f.squaredNorm();
  double eps = supply - vdot - cost;
  // A projection onto the sphere lands on eps = -E/dt up to cancellation
  // error in the three terms above; snap that residue.
  const double floor = -tank.e / params.dt;
  const double scale =
      std::max({1.0, supply, std::abs(vdot), cost, std::abs(floor)});
  if (eps < floor && eps >= floor - kRoundoff * scale) eps = floor;
  out.eps = eps;
  return {out, tank_step(tank, eps, params.dt, params.e_max)};
}

TankState tank_step(const TankState& tank, double eps, double dt,
                    double e_max) {
  if (!(dt > 0.0)) throw ContractError("tank_step: dt must be positive");
  const double slack = kTankTolerance * std::max(1.0, std::abs(eps));
  if (eps < -tank.e / dt - slack) {
    std::ostringstream msg;
    msg << "tank_step: flow " << eps << " drains more than E/dt = "
        << tank.e / dt;
    throw InternalError(msg.str());
  }
  TankState next;
  next.e = std::clamp(tank.e + eps * dt, 0.0, e_max);
  next.eps = eps;
  return next;
}

}  // namespace hsc
