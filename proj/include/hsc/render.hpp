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

// Force rendering: the reference force is projected onto the feasible ball of
// one of two constraints on the rendered force F.
//
// Strict output passivity,  x2d^T F >= V' + k |F|^2, completes the square to
//
//   |F - x2d/(2k)|^2 <= (1/4k^2) (|x2d|^2 - c x2^T x2d + c |x2|^2),
//   c = 4 k k_v / dt.
//
// The quadratic form on the right is PSD iff 0 <= k k_v / dt <= 1.
//
// Finite L2 gain with an energy tank E,
//
//   (k/2) |F|^2 + eps = |x2d|^2 / (2k) - V',   eps >= -E / dt,
//
// eliminates eps and leaves an origin-centred ball:
//
//   |F|^2 <= (2/k) (E/dt + |x2d|^2/(2k) - V')
//          = (1/k^2) (2kE/dt + |x2d|^2 - c' x2^T x2d + c' |x2|^2),
//   c' = 2 k k_v / dt,
//
// which is PSD iff 0 <= k k_v / dt <= 2. A commonly quoted variant swaps x2
// and x2d in the last two terms,
//
//   (1/k^2) (2kE/dt + x2^T x2d - c' |x2d|^2 + c' |x2|^2);
//
// that form is indefinite for every c' > 0 (the |x2d|^2 coefficient is
// negative), cannot support the ratio-2 bound, and is not what the equality
// constraint yields. The derived form is implemented.

#include <optional>
#include <string>
#include <utility>

#include "hsc/common.hpp"
#include "hsc/dynamics.hpp"

namespace hsc {

enum class RenderMode { kNone, kPassivity, kFiniteGain };

std::string to_string(RenderMode mode);
/// Accepts "none", "passivity", "finite_gain"; throws ConfigError otherwise.
RenderMode parse_render_mode(const std::string& text);

struct TankState {
  double e = 0.0;    // stored energy
  double eps = 0.0;  // last flow
};

struct FeasibleBall {
  Vec center;
  double radius_sq = 0.0;
};

struct RenderResult {
  Vec f;
  std::optional<double> eps;  // finite-gain mode only
  bool saturated = false;     // projection moved f_ref
  double radius_sq = 0.0;
};

/// Throws ConfigError naming the violated bound: k k_v / dt must lie in
/// [0, 1] for passivity and [0, 2] for finite gain. kNone only checks signs.
void validate_params(const RenderParams& params, RenderMode mode);

/// Ratio bound for a mode (1 or 2); kNone has no bound.
double ratio_bound(RenderMode mode);

FeasibleBall passivity_ball(const Vec& x2, const Vec& x2d,
                            const RenderParams& params);

FeasibleBall finite_gain_ball(const Vec& x2, const Vec& x2d, double e,
                              const RenderParams& params);

/// Nearest point of the ball to f_ref.
Vec project_to_ball(const Vec& f_ref, const FeasibleBall& ball);

RenderResult render_passive(const Vec& f_ref, const Vec& x2, const Vec& x2d,
                            const RenderParams& params);

/// Renders F and advances the tank by one step. eps comes from the
/// equality constraint after projection.
std::pair<RenderResult, TankState> render_finite_gain(
    const Vec& f_ref, const Vec& x2, const Vec& x2d, const TankState& tank,
    const RenderParams& params);

/// e' = clamp(e + eps dt, 0, e_max). Excess above e_max is discarded.
TankState tank_step(const TankState& tank, double eps, double dt,
                    double e_max);

}  // namespace hsc
