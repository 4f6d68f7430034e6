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

// hsc: batch runner, auditor and live server for the haptic shared-control
// stack.
//
// Exit codes: 0 all requested audits pass, 1 an audit failed, 2 config or
// usage error, 3 runtime failure (I/O, aborted run, bind failure).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hsc/audit.hpp"
#include "hsc/scenario.hpp"
#include "hsc/sim.hpp"
#include "hsc/sweep.hpp"
#include "hsc/trace_io.hpp"

#if defined(HSC_WITH_TELEOP)
#include "hsc/teleop/server.hpp"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAudit = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::set<std::string> parse_checks(const std::string& list) {
  std::set<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item != "l2" && item != "invariance" && item != "characteristics") {
      throw hsc::ConfigError("unknown check '" + item +
                             "' (expected l2, invariance, characteristics)");
    }
    out.insert(item);
  }
  return out;
}

hsc::AuditReport run_checks(const hsc::Trace& trace,
                            const hsc::ScenarioConfig& config,
                            const std::set<std::string>& checks) {
  hsc::AuditReport report;
  if (checks.contains("l2")) {
    report.append(hsc::audit_l2_gain(trace, config.render));
  }
  if (checks.contains("invariance")) {
    report.append(hsc::audit_forward_invariance(trace, config.barrier));
  }
  if (checks.contains("characteristics")) {
    report.append(hsc::audit_characteristics(trace, config.barrier,
                                             config.render, config.mode));
  }
  return report;
}

// Parameters for auditing a bare trace: the wall scenario defaults.
hsc::ScenarioConfig default_audit_config() {
  hsc::ScenarioConfig c;
  c.name = "default";
  c.dt = 0.05;
  c.initial = hsc::RobotState::at_rest(hsc::Vec::Zero(2));
  c.barrier.a = (hsc::Vec(2) << 0.0, -1.0).finished();
  c.barrier.b = 4.0;
  c.render = {1.0, 0.025, 0.05, 0.0};
  c.mode = hsc::RenderMode::kFiniteGain;
  c.op.intention.value = hsc::Vec::Zero(2);
  return c;
}

void print_small_gain(const hsc::ScenarioConfig& c) {
  const double product = hsc::small_gain_product(c);
  std::cerr << "loop gain k_h/k = " << product
            << (product < 1.0 ? "  (small-gain stability certified)"
                              : "  (>= 1: no small-gain stability claim)")
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Haptic shared-control simulation, audits and live service"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Simulate a scenario and export its trace");
  std::string run_config, run_mode, run_out, run_format = "csv", run_checks_arg;
  double run_emax = -1.0;
  run->add_option("config", run_config, "Scenario file")->required();
  run->add_option("--mode", run_mode, "Override render mode (none|passivity|finite_gain)");
  run->add_option("--e-max", run_emax, "Override the tank cap");
  run->add_option("--out", run_out, "Trace output path (stdout if omitted)");
  run->add_option("--format", run_format, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  run->add_option("--check", run_checks_arg, "Audits to run: l2,invariance,characteristics");

  // audit
  auto* audit = app.add_subcommand("audit", "Audit a recorded trace");
  std::string audit_trace, audit_checks_arg = "l2", audit_config, audit_format;
  audit->add_option("trace", audit_trace, "Trace file (.csv or .jsonl)")->required();
  audit->add_option("--check", audit_checks_arg, "l2,invariance,characteristics");
  audit->add_option("--config", audit_config, "Scenario supplying k, k_v, barrier and mode");
  audit->add_option("--format", audit_format, "csv|jsonl (default: from extension)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a scenario across parameter values");
  std::string sweep_config, sweep_param = "k_h";
  std::vector<double> sweep_values;
  unsigned sweep_jobs = std::max(1u, std::thread::hardware_concurrency());
  sweep->add_option("config", sweep_config, "Scenario file")->required();
  sweep->add_option("--param", sweep_param, "k_h|k|e_max");
  sweep->add_option("--values", sweep_values, "Comma-separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--jobs", sweep_jobs, "Parallel workers");

#if defined(HSC_WITH_TELEOP)
  auto* serve = app.add_subcommand("serve", "Run the live teleoperation service");
  std::string serve_config, serve_listen, serve_out;
  double serve_duration = 0.0;
  serve->add_option("config", serve_config, "Scenario file (operator section unused)")->required();
  serve->add_option("--listen", serve_listen, "host:port (env HSC_LISTEN, default 127.0.0.1:8765)");
  serve->add_option("--duration", serve_duration, "Stop after this many simulated seconds (0 = until signal)");
  serve->add_option("--out", serve_out, "Save the session trace (CSV) on exit");
#endif

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      hsc::ScenarioConfig config = hsc::load_scenario(run_config);
      if (!run_mode.empty()) config.mode = hsc::parse_render_mode(run_mode);
      if (run_emax >= 0.0) {
        config.render.e_max = run_emax;
        config.e0 = std::min(config.e0, run_emax);
      }
      config.validate();
      const auto checks = parse_checks(run_checks_arg);
      print_small_gain(config);
      hsc::Trace trace;
      try {
        trace = hsc::run_scenario(config);
      } catch (const hsc::ScenarioAborted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
      }
      const auto fmt = hsc::parse_trace_format(run_format);
      if (run_out.empty()) {
        hsc::write_trace(trace, fmt, std::cout);
      } else {
        hsc::export_trace(trace, fmt, run_out);
        std::cerr << "wrote " << trace.size() << " samples to " << run_out << '\n';
      }
      if (checks.empty()) return kExitOk;
      const hsc::AuditReport report = run_checks(trace, config, checks);
      std::cerr << hsc::format_report(report);
      return report.passed() ? kExitOk : kExitAudit;
    }

    if (*audit) {
      const auto checks = parse_checks(audit_checks_arg);
      const hsc::ScenarioConfig config = audit_config.empty()
                                             ? default_audit_config()
                                             : hsc::load_scenario(audit_config);
      hsc::Trace trace;
      try {
        trace = audit_format.empty()
                    ? hsc::import_trace(audit_trace)
                    : hsc::import_trace(audit_trace,
                                        hsc::parse_trace_format(audit_format));
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
      }
      const hsc::AuditReport report = run_checks(trace, config, checks);
      std::cout << hsc::format_report(report);
      return report.passed() ? kExitOk : kExitAudit;
    }

    if (*sweep) {
      const hsc::ScenarioConfig base = hsc::load_scenario(sweep_config);
      const hsc::SweepParam param = hsc::parse_sweep_param(sweep_param);
      const auto rows = hsc::run_sweep(base, param, sweep_values, sweep_jobs);
      bool ok = true;
      std::cout << sweep_param << ",loop_gain,stability_claim,completed,max_abs,l2_pass,l2_worst_margin,error\n";
      for (const auto& row : rows) {
        const bool l2 = row.completed && row.audits.passed();
        ok = ok && row.completed && l2;
        const auto* check = row.audits.find("l2_gain");
        std::cout << row.value << ',' << row.loop_gain << ','
                  << (row.stability_claimed ? "certified" : "refused") << ','
                  << row.completed << ',' << row.max_abs << ',' << l2 << ','
                  << (check ? check->worst_margin : 0.0) << ','
                  << '"' << row.error << '"' << '\n';
      }
      return ok ? kExitOk : kExitAudit;
    }

#if defined(HSC_WITH_TELEOP)
    if (*serve) {
      hsc::ScenarioConfig config = hsc::load_scenario(serve_config);
      std::string listen = serve_listen;
      if (listen.empty()) {
        const char* env = std::getenv("HSC_LISTEN");
        listen = env ? env : "127.0.0.1:8765";
      }
      return hsc::teleop::serve(config, listen, serve_duration, serve_out);
    }
#endif
  } catch (const hsc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hsc::ContractError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
