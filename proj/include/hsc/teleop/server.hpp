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

// WebSocket + HTTP front end for a TeleopSession.
//
//   ws://host:port/ws        command/telemetry channel (see protocol.hpp)
//   GET /trace.csv           session trace in export_trace CSV format
//   GET /healthz             {"v":1,"steps":..,"clients":..}
//
// The first WebSocket client controls the robot; later ones are read-only
// observers until the controller leaves.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include "hsc/scenario.hpp"
#include "hsc/teleop/session.hpp"

namespace hsc::teleop {

struct Endpoint {
  std::string host = "127.0.0.1";
  unsigned short port = 8765;
};

/// Accepts "host:port", ":port" or "port".
Endpoint parse_endpoint(const std::string& text);

class BindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServerOptions {
  SessionOptions session;
  /// Simulated seconds to run; 0 runs until stop().
  double duration = 0.0;
  double heartbeat_s = 1.0;
  /// Install SIGINT/SIGTERM handlers that stop the server.
  bool handle_signals = false;
};

class Server {
 public:
  /// Binds immediately (throws BindError). Port 0 picks a free port.
  Server(const ScenarioConfig& config, const Endpoint& endpoint,
         ServerOptions options = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  unsigned short port() const;

  /// Starts the network thread and the control loop.
  void start();
  /// Requests shutdown; safe from any thread, including handlers.
  void stop();
  /// Blocks until stop() or the configured duration has elapsed, then tears
  /// down both threads. The session trace stays available.
  void wait();

  TeleopSession& session();
  std::size_t client_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// CLI entry: runs until a signal (or duration), optionally saving the trace.
/// Returns a process exit code.
int serve(const ScenarioConfig& config, const std::string& endpoint,
          double duration, const std::string& trace_out = "");

}  // namespace hsc::teleop
