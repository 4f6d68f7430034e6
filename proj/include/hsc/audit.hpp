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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hsc/cbf.hpp"
#include "hsc/render.hpp"
#include "hsc/sim.hpp"

namespace hsc {

struct AuditCheck {
  std::string name;
  bool passed = true;
  /// Smallest slack seen; negative means violated.
  double worst_margin = 0.0;
  /// Sample carrying the worst margin (or the witness for existence checks).
  std::optional<std::size_t> witness_index;
  std::optional<double> witness_time;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditCheck> checks;

  bool passed() const;
  const AuditCheck* find(const std::string& name) const;
  void append(const AuditReport& other);
};

enum class Quadrature { kLeftRiemann, kTrapezoidal };

/// Every prefix must satisfy
///   sum |F|^2 dt <= (1/k^2) sum |x2d|^2 dt + (2/k) V(0) + tol,
/// with V(0) taken from the first sample.
AuditReport audit_l2_gain(const Trace& trace, const RenderParams& params,
                          double tol = 1e-6,
                          Quadrature rule = Quadrature::kLeftRiemann);

/// min h over the trace must stay >= -tol. Meaningful when the plant was
/// driven by the safe input.
AuditReport audit_forward_invariance(const Trace& trace,
                                     const SafetyHalfspace& hs,
                                     double tol = 1e-6);

struct CharacteristicTolerances {
  double far_threshold = 2.0;    // h above this counts as far [m]
  double rest_threshold = 1e-3;  // |x2|, |x2d| below this counts as rest
  double force_tol = 1e-9;
  double l2_tol = 1e-6;
  double state_match_tol = 1e-9;  // C4: equal (x2, x2d)
  double radius_diff_tol = 1e-6;  // C4: radii must differ by more
};

/// C1: zero force when far (h > far, not approaching) or at rest.
/// C2: finite-gain F agrees in sign with F_ref along the normal; zero force
///     when retreating far from the obstacle.
/// C3: the L2 prefix audit.
/// C4: with a tank, some pair of samples with equal (x2, x2d) has different
///     allowed radius.
AuditReport audit_characteristics(const Trace& trace,
                                  const SafetyHalfspace& hs,
                                  const RenderParams& params, RenderMode mode,
                                  const CharacteristicTolerances& tol = {});

/// Largest absolute component over every vector and scalar in the trace.
double trace_max_abs(const Trace& trace);

std::string format_report(const AuditReport& report);

}  // namespace hsc
