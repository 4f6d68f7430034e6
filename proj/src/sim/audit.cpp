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

#include "hsc/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hsc/dynamics.hpp"
#include "hsc/kernels/batch.hpp"

namespace hsc {

namespace {

void set_witness(AuditCheck& check, const Trace& trace, std::size_t i) {
  check.witness_index = i;
  check.witness_time = trace[i].t;
}

bool close_inf(const Vec& a, const Vec& b, double tol) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

bool AuditReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AuditCheck& c) { return c.passed; });
}

const AuditCheck* AuditReport::find(const std::string& name) const {
  for (const AuditCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void AuditReport::append(const AuditReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

AuditReport audit_l2_gain(const Trace& trace, const RenderParams& params,
                          double tol, Quadrature rule) {
  AuditCheck check;
  check.name = "l2_gain";
  if (trace.empty()) {
    check.detail = "empty trace";
    return {{check}};
  }
  const std::size_t n = trace.size();
  std::vector<double> f_sq(n), x2d_sq(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    f_sq[i] = trace[i].f.squaredNorm();
    x2d_sq[i] = trace[i].x2d.squaredNorm();
  }
  const double v0 = storage_energy(trace.front().x2, params.k_v);
  const double budget = 2.0 / params.k * v0;

  // g_i = (|F_i|^2 - |x2d_i|^2 / k^2) dt; the slack after prefix i is
  // budget - cumulative(g).
  kernels::l2_increments(f_sq, x2d_sq, g, params.k, params.dt);

  double cumulative = 0.0;
  check.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (rule == Quadrature::kLeftRiemann) {
      cumulative += g[i];
    } else if (i > 0) {
      cumulative += 0.5 * (g[i - 1] + g[i]);
    }
    const double margin = budget - cumulative;
    if (margin < check.worst_margin) {
      check.worst_margin = margin;
      set_witness(check, trace, i);
    }
  }
  check.passed = check.worst_margin >= -tol;
  std::ostringstream detail;
  detail << "budget (2/k)V(0) = " << budget << ", tol = " << tol;
  check.detail = detail.str();
  if (check.passed) {
    check.witness_index.reset();
    check.witness_time.reset();
  }
  return {{check}};
}

AuditReport audit_forward_invariance(const Trace& trace,
                                     const SafetyHalfspace& hs, double tol) {
  AuditCheck check;
  check.name = "forward_invariance";
  check.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double h = barrier_value(hs, trace[i].x1);
    if (h < check.worst_margin) {
      check.worst_margin = h;
      set_witness(check, trace, i);
    }
  }
  if (trace.empty()) check.worst_margin = 0.0;
  check.passed = check.worst_margin >= -tol;
  check.detail = "min h over trace";
  if (check.passed) {
    check.witness_index.reset();
    check.witness_time.reset();
  }
  return {{check}};
}

AuditReport audit_characteristics(const Trace& trace,
                                  const SafetyHalfspace& hs,
                                  const RenderParams& params, RenderMode mode,
                                  const CharacteristicTolerances& tol) {
  AuditReport report;

  // C1
  {
    AuditCheck c1;
    c1.name = "C1_zero_when_far_or_rest";
    double worst = 0.0;
    std::size_t covered = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const TraceSample& s = trace[i];
      const bool far = s.h > tol.far_threshold && hs.a.dot(s.x2) >= 0.0;
      const bool rest = s.x2.norm() < tol.rest_threshold &&
                        s.x2d.norm() < tol.rest_threshold;
      if (!far && !rest) continue;
      ++covered;
      const double fn = s.f.norm();
      if (fn > worst) {
        worst = fn;
        set_witness(c1, trace, i);
      }
    }
    c1.worst_margin = tol.force_tol - worst;
    c1.passed = worst <= tol.force_tol;
    c1.detail = std::to_string(covered) + " far/rest samples";
    if (c1.passed) c1.witness_index.reset(), c1.witness_time.reset();
    report.checks.push_back(c1);
  }

  // C2
  {
    AuditCheck c2;
    c2.name = "C2_sign_and_retreat";
    double worst = std::numeric_limits<double>::infinity();
    std::size_t active = 0;
    std::size_t retreat = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const TraceSample& s = trace[i];
      double margin = std::numeric_limits<double>::infinity();
      if (mode == RenderMode::kFiniteGain && s.f_ref.norm() > tol.force_tol) {
        ++active;
        margin = std::min(margin, hs.a.dot(s.f) * hs.a.dot(s.f_ref) +
                                      tol.force_tol);
      }
      const double away = hs.a.dot(s.x2);
      if (away > tol.rest_threshold && s.h > tol.far_threshold) {
        ++retreat;
        margin = std::min(margin, tol.force_tol - s.f.norm());
      }
      if (margin < worst) {
        worst = margin;
        set_witness(c2, trace, i);
      }
    }
    c2.worst_margin = std::isinf(worst) ? 0.0 : worst;
    c2.passed = c2.worst_margin >= 0.0;
    c2.detail = std::to_string(active) + " active-CBF samples checked for "
                "sign, " + std::to_string(retreat) + " retreat samples";
    if (mode != RenderMode::kFiniteGain) {
      c2.detail += " (sign check applies to finite_gain only)";
    }
    if (c2.passed) c2.witness_index.reset(), c2.witness_time.reset();
    report.checks.push_back(c2);
  }

  // C3
  {
    AuditCheck c3 = audit_l2_gain(trace, params, tol.l2_tol).checks.front();
    c3.name = "C3_l2_bound";
    report.checks.push_back(c3);
  }

  // C4
  {
    AuditCheck c4;
    c4.name = "C4_tank_memory";
    if (mode != RenderMode::kFiniteGain || params.e_max <= 0.0) {
      c4.detail = "not applicable (needs finite_gain with e_max > 0)";
    } else {
      double best = 0.0;
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = 0; i < trace.size(); ++i) {
        for (std::size_t j = i + 1; j < trace.size(); ++j) {
          const double diff =
              std::abs(trace[i].radius_sq - trace[j].radius_sq);
          if (diff <= best) continue;
          if (!close_inf(trace[i].x2, trace[j].x2, tol.state_match_tol) ||
              !close_inf(trace[i].x2d, trace[j].x2d, tol.state_match_tol)) {
            continue;
          }
          best = diff;
          bi = i;
          bj = j;
        }
      }
      c4.worst_margin = best - tol.radius_diff_tol;
      c4.passed = best > tol.radius_diff_tol;
      if (c4.passed) {
        set_witness(c4, trace, bj);
        std::ostringstream d;
        d << "samples " << bi << " (t=" << trace[bi].t << ") and " << bj
          << " (t=" << trace[bj].t << ") share (x2, x2d); radius_sq "
          << trace[bi].radius_sq << " vs " << trace[bj].radius_sq;
        c4.detail = d.str();
      } else {
        c4.detail = "no pair with equal (x2, x2d) and different radius";
      }
    }
    report.checks.push_back(c4);
  }
  return report;
}

double trace_max_abs(const Trace& trace) {
  double m = 0.0;
  auto vmax = [&](const Vec& v) {
    if (v.size() > 0) m = std::max(m, v.cwiseAbs().maxCoeff());
  };
  for (const TraceSample& s : trace) {
    vmax(s.x1);
    vmax(s.x2);
    vmax(s.x2d);
    vmax(s.u_ref);
    vmax(s.u_cbf);
    vmax(s.f_ref);
    vmax(s.f);
    m = std::max({m, std::abs(s.eps), std::abs(s.e), std::abs(s.h),
                  std::abs(s.radius_sq)});
  }
  return m;
}

std::string format_report(const AuditReport& report) {
  std::ostringstream out;
  for (const AuditCheck& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name
        << "  worst_margin=" << c.worst_margin;
    if (c.witness_index) {
      out << "  witness=#" << *c.witness_index << " t=" << *c.witness_time;
    }
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
  }
  return out.str();
}

}  // namespace hsc
