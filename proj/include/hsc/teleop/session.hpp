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

// Real-time shell over ClosedLoop. The control loop owns the simulation;
// network code only touches the command cell and reads snapshots.

#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stop_token>

#include "hsc/scenario.hpp"
#include "hsc/sim.hpp"
#include "hsc/teleop/protocol.hpp"

namespace hsc::teleop {

struct SessionOptions {
  /// Steps without a fresh command before the dead-man decay starts.
  int timeout_steps = 10;
  /// Length of the linear decay to zero.
  int decay_steps = 5;
  double dead_zone_cm = 1.0;
  double gain_mps_per_cm = 0.2;
  /// Wall-clock speed-up of the fixed-rate loop. Simulated time still
  /// advances exactly dt per frame.
  double rate_scale = 1.0;
};

/// Last-writer-wins command buffer. Writers never block on a step.
class CommandCell {
 public:
  void post(const Vec& x2d);
  /// Returns true and the latest velocity if something was posted since the
  /// previous take().
  bool take(Vec& out);

 private:
  std::mutex mu_;
  Vec value_;
  bool fresh_ = false;
};

class TeleopSession {
 public:
  using FrameCallback = std::function<void(std::uint64_t step, const TraceSample&)>;

  explicit TeleopSession(const ScenarioConfig& config, SessionOptions opt = {});

  const ScenarioConfig& config() const { return config_; }
  const SessionOptions& options() const { return opt_; }

  /// Network side: a validated command from the controlling connection.
  void submit(const CommandMessage& msg);
  void submit_velocity(const Vec& x2d) { cell_.post(x2d); }

  /// One control step. Only the loop thread calls this.
  TraceSample tick();

  /// Copy of the trace so far (same schema as run_scenario).
  Trace snapshot() const;
  std::size_t steps() const;
  double sim_time() const;

  /// Fixed-rate loop: ticks every dt / rate_scale until stop is requested or
  /// max_steps (when non-zero) is reached. An overrun is logged and the
  /// schedule restarts from now, so at most one step runs per tick.
  void run(std::stop_token stop, const FrameCallback& on_frame,
           std::uint64_t max_steps = 0);

  std::uint64_t overruns() const { return overruns_; }

 private:
  Vec dead_man_command();

  ScenarioConfig config_;
  SessionOptions opt_;
  CommandCell cell_;

  // Loop-thread state.
  ClosedLoop loop_;
  Vec last_command_;
  int stale_steps_ = 0;
  std::uint64_t overruns_ = 0;

  mutable std::mutex trace_mu_;
  Trace trace_;
};

}  // namespace hsc::teleop
