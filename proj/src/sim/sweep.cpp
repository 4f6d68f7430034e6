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

#include "hsc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <random>
#include <thread>

#include "hsc/kernels/batch.hpp"
#include "hsc/sim.hpp"

namespace hsc {

FeasibilitySweepResult feasibility_sweep(const FeasibilitySweepOptions& opt,
                                         double tol) {
  if (opt.mode == RenderMode::kNone) {
    throw ContractError("feasibility_sweep: mode must render a ball");
  }
  if (opt.dim < 1 || !(opt.k > 0.0) || !(opt.dt > 0.0) || !(opt.ratio >= 0.0)) {
    throw ContractError("feasibility_sweep: bad options");
  }
  const double k_v = opt.ratio * opt.dt / opt.k;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> uni(-opt.speed, opt.speed);

  constexpr std::size_t kBatch = 4096;
  std::vector<double> dd(kBatch), sd(kBatch), ss(kBatch), e(kBatch, 0.0),
      r2(kBatch);
  std::vector<Vec> x2s(kBatch, Vec(opt.dim)), x2ds(kBatch, Vec(opt.dim));

  FeasibilitySweepResult res;
  res.min_radius_sq = std::numeric_limits<double>::infinity();
  for (std::size_t base = 0; base < opt.samples; base += kBatch) {
    const std::size_t n = std::min(kBatch, opt.samples - base);
    for (std::size_t i = 0; i < n; ++i) {
      for (Eigen::Index a = 0; a < opt.dim; ++a) {
        x2s[i][a] = uni(rng);
        x2ds[i][a] = uni(rng);
      }
      dd[i] = x2ds[i].squaredNorm();
      sd[i] = x2s[i].dot(x2ds[i]);
      ss[i] = x2s[i].squaredNorm();
    }
    const std::span<const double> cdd(dd.data(), n), csd(sd.data(), n),
        css(ss.data(), n);
    const std::span<double> out(r2.data(), n);
    if (opt.mode == RenderMode::kPassivity) {
      kernels::passivity_radius_sq(cdd, csd, css, out, opt.k, k_v, opt.dt);
    } else {
      kernels::finite_gain_radius_sq(cdd, csd, css,
                                     std::span<const double>(e.data(), n), out,
                                     opt.k, k_v, opt.dt);
    }
    for (std::size_t i = 0; i < n; ++i) {
      res.min_radius_sq = std::min(res.min_radius_sq, r2[i]);
      if (r2[i] < -tol) {
        ++res.negative;
        if (!res.first_witness) {
          res.first_witness = base + i;
          res.witness_x2 = x2s[i];
          res.witness_x2d = x2ds[i];
        }
      }
    }
    res.samples += n;
  }
  return res;
}

SweepParam parse_sweep_param(const std::string& text) {
  if (text == "k_h") return SweepParam::kKh;
  if (text == "k") return SweepParam::kK;
  if (text == "e_max") return SweepParam::kEmax;
  throw ConfigError("unknown sweep parameter '" + text +
                    "' (expected k_h, k or e_max)");
}

std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::kKh: return "k_h";
    case SweepParam::kK: return "k";
    case SweepParam::kEmax: return "e_max";
  }
  return "unknown";
}

ScenarioConfig with_param(const ScenarioConfig& base, SweepParam p,
                          double value) {
  ScenarioConfig c = base;
  switch (p) {
    case SweepParam::kKh:
      c.op.k_h = value;
      break;
    case SweepParam::kK:
      if (!(value > 0.0)) throw ConfigError("sweep: k must be positive");
      c.render.k_v = base.render.k_v * base.render.k / value;
      c.render.k = value;
      break;
    case SweepParam::kEmax:
      c.render.e_max = value;
      c.e0 = std::min(c.e0, value);
      break;
  }
  c.name = base.name + "[" + to_string(p) + "=" + std::to_string(value) + "]";
  return c;
}

double small_gain_product(const ScenarioConfig& config) {
  if (config.mode == RenderMode::kNone) return 0.0;
  return config.op.l2_gain() / config.render.k;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& base, SweepParam p,
                                const std::vector<double>& values,
                                unsigned jobs) {
  std::vector<SweepRow> rows(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepRow& row = rows[i];
      row.value = values[i];
      try {
        const ScenarioConfig c = with_param(base, p, values[i]);
        c.validate();
        row.loop_gain = small_gain_product(c);
        row.stability_claimed = row.loop_gain < 1.0;
        const Trace trace = run_scenario(c);
        row.completed = true;
        row.max_abs = trace_max_abs(trace);
        row.audits = audit_l2_gain(trace, c.render);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  jobs = std::clamp(jobs, 1u, static_cast<unsigned>(std::max<std::size_t>(1, values.size())));
  std::vector<std::jthread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace hsc
