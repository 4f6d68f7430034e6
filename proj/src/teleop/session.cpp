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

#include "hsc/teleop/session.hpp"

#include <algorithm>
#include <iostream>
#include <thread>

namespace hsc::teleop {

void CommandCell::post(const Vec& x2d) {
  std::lock_guard lock(mu_);
  value_ = x2d;
  fresh_ = true;
}

bool CommandCell::take(Vec& out) {
  std::lock_guard lock(mu_);
  if (!fresh_) return false;
  out = value_;
  fresh_ = false;
  return true;
}

TeleopSession::TeleopSession(const ScenarioConfig& config, SessionOptions opt)
    : config_(config), opt_(opt), loop_(config) {
  if (opt_.timeout_steps < 0 || opt_.decay_steps < 1 ||
      !(opt_.rate_scale > 0.0)) {
    throw ConfigError("teleop: bad session options");
  }
  last_command_ = Vec::Zero(config_.dim());
}

void TeleopSession::submit(const CommandMessage& msg) {
  Vec v = command_velocity(msg, opt_.dead_zone_cm, opt_.gain_mps_per_cm);
  if (v.size() != config_.dim()) {
    throw ProtocolError("command dimension does not match the session");
  }
  cell_.post(v);
}

Vec TeleopSession::dead_man_command() {
  Vec fresh;
  if (cell_.take(fresh)) {
    last_command_ = fresh;
    stale_steps_ = 0;
    return last_command_;
  }
  ++stale_steps_;
  if (stale_steps_ < opt_.timeout_steps) return last_command_;
  // Linear ramp: stale == timeout gives (decay-1)/decay, zero after decay
  // steps.
  const int into = stale_steps_ - opt_.timeout_steps + 1;
  const double scale =
      std::max(0.0, 1.0 - static_cast<double>(into) / opt_.decay_steps);
  return last_command_ * scale;
}

TraceSample TeleopSession::tick() {
  const Vec x2d = dead_man_command();
  TraceSample s = loop_.advance(x2d);
  std::lock_guard lock(trace_mu_);
  trace_.push_back(s);
  return s;
}

Trace TeleopSession::snapshot() const {
  std::lock_guard lock(trace_mu_);
  return trace_;
}

std::size_t TeleopSession::steps() const {
  std::lock_guard lock(trace_mu_);
  return trace_.size();
}

double TeleopSession::sim_time() const {
  std::lock_guard lock(trace_mu_);
  return static_cast<double>(trace_.size()) * config_.dt;
}

void TeleopSession::run(std::stop_token stop, const FrameCallback& on_frame,
                        std::uint64_t max_steps) {
  using clock = std::chrono::steady_clock;
  const auto period = std::chrono::duration_cast<clock::duration>(
      std::chrono::duration<double>(config_.dt / opt_.rate_scale));
  auto next = clock::now();
  std::uint64_t n = 0;
  while (!stop.stop_requested() && (max_steps == 0 || n < max_steps)) {
    const TraceSample s = tick();
    if (on_frame) on_frame(n, s);
    ++n;
    next += period;
    const auto now = clock::now();
    if (now > next + period) {
      ++overruns_;
      std::cerr << "teleop: loop overrun at step " << n << ", resyncing\n";
      next = now;
      continue;
    }
    std::this_thread::sleep_until(next);
  }
}

}  // namespace hsc::teleop
