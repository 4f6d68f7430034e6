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

#include "hsc/teleop/server.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <future>
#include <iostream>
#include <iterator>
#include <limits>
#include <set>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast.hpp>

#include "hsc/trace_io.hpp"
#include "json.hpp"

namespace hsc::teleop {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

Endpoint parse_endpoint(const std::string& text) {
  Endpoint ep;
  std::string port_text = text;
  const auto colon = text.rfind(':');
  if (colon != std::string::npos) {
    if (colon > 0) ep.host = text.substr(0, colon);
    port_text = text.substr(colon + 1);
  }
  try {
    std::size_t used = 0;
    const unsigned long p = std::stoul(port_text, &used);
    if (used != port_text.size() || p > 65535) throw std::out_of_range("port");
    ep.port = static_cast<unsigned short>(p);
  } catch (const std::exception&) {
    throw ConfigError("bad endpoint '" + text + "' (expected host:port)");
  }
  return ep;
}

namespace {

// Frames queued per client before new telemetry is dropped for it.
constexpr std::size_t kMaxQueued = 256;

}  // namespace

struct Server::Impl {
  class WsConn;

  Impl(const ScenarioConfig& config, const Endpoint& ep, ServerOptions opt)
      : options(opt),
        session(config, opt.session),
        acceptor(ioc),
        heartbeat(ioc),
        signals(ioc) {
    boost::system::error_code ec;
    const auto address = net::ip::make_address(ep.host, ec);
    if (ec) throw BindError("bad listen address '" + ep.host + "'");
    const tcp::endpoint endpoint(address, ep.port);
    acceptor.open(endpoint.protocol(), ec);
    if (!ec) acceptor.set_option(net::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(endpoint, ec);
    if (!ec) acceptor.listen(net::socket_base::max_listen_connections, ec);
    if (ec) {
      throw BindError("cannot listen on " + ep.host + ":" +
                      std::to_string(ep.port) + ": " + ec.message());
    }
    bound_port = acceptor.local_endpoint().port();
  }

  // ---- connections (touched only on the io thread) ----

  class WsConn : public std::enable_shared_from_this<WsConn> {
   public:
    WsConn(Impl& server, tcp::socket socket)
        : server_(server), ws_(std::move(socket)) {}

    void accept(http::request<http::string_body> req) {
      ws_.set_option(
          websocket::stream_base::timeout::suggested(beast::role_type::server));
      ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
        if (ec) return;
        self->on_open();
      });
    }

    void send(std::string msg) {
      if (closing_) return;
      if (queue_.size() >= kMaxQueued) return;
      queue_.push_back(std::move(msg));
      if (queue_.size() == 1) write_next();
    }

    // Drops anything not yet on the wire; an in-flight write finishes first
    // since beast allows only one outstanding write or close.
    void close(websocket::close_code code, const std::string& reason) {
      if (closing_) return;
      closing_ = true;
      close_reason_ = websocket::close_reason(code, reason);
      if (queue_.size() > 1) queue_.erase(std::next(queue_.begin()), queue_.end());
      if (queue_.empty()) send_close();
    }

    void hard_close() {
      closing_ = true;
      beast::error_code ec;
      beast::get_lowest_layer(ws_).socket().close(ec);
    }

    Role role() const { return role_; }

   private:
    void on_open() {
      role_ = server_.register_conn(shared_from_this());
      send(encode_hello(role_, server_.session.config()));
      read_next();
    }

    void read_next() {
      ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec,
                                                         std::size_t) {
        if (ec) {
          self->server_.unregister_conn(self);
          return;
        }
        self->on_message();
      });
    }

    void on_message() {
      const std::string text = beast::buffers_to_string(buffer_.data());
      buffer_.consume(buffer_.size());
      if (!ws_.got_text()) {
        close(websocket::close_code::protocol_error, "binary frames unsupported");
        return;
      }
      try {
        const CommandMessage msg =
            parse_command(text, server_.session.config().dim());
        if (role_ != Role::kController) {
          send(encode_notice("read_only", "another client controls the robot"));
        } else if (msg.seq <= last_seq_) {
          send(encode_notice("stale_seq", std::to_string(msg.seq)));
        } else {
          last_seq_ = msg.seq;
          server_.session.submit(msg);
        }
      } catch (const ProtocolError& e) {
        close(websocket::close_code::protocol_error, e.what());
      }
      if (!closing_) read_next();
    }

    void write_next() {
      ws_.text(true);
      ws_.async_write(net::buffer(queue_.front()),
                      [self = shared_from_this()](beast::error_code ec,
                                                  std::size_t) {
                        if (ec) {
                          self->queue_.clear();
                          return;
                        }
                        if (!self->queue_.empty()) self->queue_.pop_front();
                        if (self->closing_) {
                          self->queue_.clear();
                          self->send_close();
                        } else if (!self->queue_.empty()) {
                          self->write_next();
                        }
                      });
    }

    void send_close() {
      if (close_sent_) return;
      close_sent_ = true;
      ws_.async_close(close_reason_,
                      [self = shared_from_this()](beast::error_code) {});
    }

    Impl& server_;
    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    std::deque<std::string> queue_;
    Role role_ = Role::kObserver;
    std::int64_t last_seq_ = std::numeric_limits<std::int64_t>::min();
    bool closing_ = false;
    bool close_sent_ = false;
    websocket::close_reason close_reason_;
  };

  class HttpConn : public std::enable_shared_from_this<HttpConn> {
   public:
    HttpConn(Impl& server, tcp::socket socket)
        : server_(server), stream_(std::move(socket)) {}

    void start() {
      stream_.expires_after(std::chrono::seconds(30));
      http::async_read(stream_, buffer_, req_,
                       [self = shared_from_this()](beast::error_code ec,
                                                   std::size_t) {
                         if (!ec) self->on_request();
                       });
    }

   private:
    void on_request() {
      if (websocket::is_upgrade(req_)) {
        if (req_.target() == "/ws") {
          stream_.expires_never();
          auto ws = std::make_shared<WsConn>(server_, stream_.release_socket());
          ws->accept(std::move(req_));
          return;
        }
        respond(http::status::not_found, "text/plain", "no such endpoint\n");
        return;
      }
      if (req_.method() != http::verb::get) {
        respond(http::status::method_not_allowed, "text/plain", "GET only\n");
      } else if (req_.target() == "/trace.csv") {
        respond(http::status::ok, "text/csv",
                trace_to_string(server_.session.snapshot(), TraceFormat::kCsv),
                "attachment; filename=\"trace.csv\"");
      } else if (req_.target() == "/healthz") {
        const nlohmann::json j{{"v", kProtocolVersion},
                               {"steps", server_.session.steps()},
                               {"clients", server_.conns.size()}};
        respond(http::status::ok, "application/json", j.dump());
      } else {
        respond(http::status::not_found, "text/plain", "no such endpoint\n");
      }
    }

    void respond(http::status status, const char* type, std::string body,
                 const char* disposition = nullptr) {
      res_.result(status);
      res_.version(req_.version());
      res_.set(http::field::server, "hsc-teleop");
      res_.set(http::field::content_type, type);
      res_.set(http::field::access_control_allow_origin, "*");
      if (disposition) res_.set(http::field::content_disposition, disposition);
      res_.keep_alive(false);
      res_.body() = std::move(body);
      res_.prepare_payload();
      http::async_write(stream_, res_,
                        [self = shared_from_this()](beast::error_code,
                                                    std::size_t) {
                          beast::error_code ec;
                          self->stream_.socket().shutdown(
                              tcp::socket::shutdown_send, ec);
                        });
    }

    Impl& server_;
    beast::tcp_stream stream_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> req_;
    http::response<http::string_body> res_;
  };

  Role register_conn(const std::shared_ptr<WsConn>& c) {
    conns.insert(c);
    if (!controller) {
      controller = c.get();
      return Role::kController;
    }
    return Role::kObserver;
  }

  void unregister_conn(const std::shared_ptr<WsConn>& c) {
    conns.erase(c);
    if (controller == c.get()) controller = nullptr;
  }

  void do_accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;  // acceptor closed
      std::make_shared<HttpConn>(*this, std::move(socket))->start();
      do_accept();
    });
  }

  void arm_heartbeat() {
    heartbeat.expires_after(std::chrono::duration_cast<net::steady_timer::duration>(
        std::chrono::duration<double>(options.heartbeat_s)));
    heartbeat.async_wait([this](beast::error_code ec) {
      if (ec) return;
      const double t = session.sim_time();
      for (const auto& c : conns) c->send(encode_heartbeat(t, c->role()));
      arm_heartbeat();
    });
  }

  void broadcast(std::string msg) {
    net::post(ioc, [this, msg = std::move(msg)] {
      for (const auto& c : conns) c->send(msg);
    });
  }

  void request_stop() {
    {
      std::lock_guard lock(mu);
      stop_requested = true;
    }
    cv.notify_all();
  }

  void shutdown() {
    if (torn_down) return;
    torn_down = true;
    if (loop_thread.joinable()) {
      loop_thread.request_stop();
      loop_thread.join();
    }
    if (io_thread.joinable()) {
      net::post(ioc, [this] {
        beast::error_code ec;
        acceptor.close(ec);
        heartbeat.cancel();
        signals.cancel(ec);
        for (const auto& c : conns) c->close(websocket::close_code::going_away,
                                             "server shutting down");
        // Give close frames a moment, then force everything down.
        auto timer = std::make_shared<net::steady_timer>(ioc);
        timer->expires_after(std::chrono::milliseconds(200));
        timer->async_wait([this, timer](beast::error_code) {
          for (const auto& c : conns) c->hard_close();
          conns.clear();
          work.reset();
          ioc.stop();
        });
      });
      io_thread.join();
    }
  }

  ServerOptions options;
  TeleopSession session;
  net::io_context ioc;
  net::executor_work_guard<net::io_context::executor_type> work =
      net::make_work_guard(ioc);
  tcp::acceptor acceptor;
  net::steady_timer heartbeat;
  net::signal_set signals;
  unsigned short bound_port = 0;

  std::set<std::shared_ptr<WsConn>> conns;
  WsConn* controller = nullptr;

  std::jthread io_thread;
  std::jthread loop_thread;
  std::mutex mu;
  std::condition_variable cv;
  bool stop_requested = false;
  bool started = false;
  bool torn_down = false;
};

Server::Server(const ScenarioConfig& config, const Endpoint& endpoint,
               ServerOptions options)
    : impl_(std::make_unique<Impl>(config, endpoint, options)) {
  if (options.duration < 0.0 || !(options.heartbeat_s > 0.0)) {
    throw ConfigError("teleop: bad server options");
  }
}

Server::~Server() {
  impl_->request_stop();
  impl_->shutdown();
}

unsigned short Server::port() const { return impl_->bound_port; }

void Server::start() {
  Impl& s = *impl_;
  if (s.started) return;
  s.started = true;
  if (s.options.handle_signals) {
    s.signals.add(SIGINT);
    s.signals.add(SIGTERM);
    s.signals.async_wait([&s](beast::error_code ec, int) {
      if (!ec) s.request_stop();
    });
  }
  s.do_accept();
  s.arm_heartbeat();
  s.io_thread = std::jthread([&s] { s.ioc.run(); });

  std::uint64_t max_steps = 0;
  if (s.options.duration > 0.0) {
    max_steps = static_cast<std::uint64_t>(
        std::llround(s.options.duration / s.session.config().dt));
    if (max_steps == 0) max_steps = 1;
  }
  s.loop_thread = std::jthread([&s, max_steps](std::stop_token st) {
    s.session.run(st,
                  [&s](std::uint64_t step, const TraceSample& sample) {
                    s.broadcast(encode_telemetry(step, sample));
                  },
                  max_steps);
    if (max_steps > 0) {
      // Session over: tell clients now rather than leaving them on heartbeats.
      net::post(s.ioc, [&s] {
        s.heartbeat.cancel();
        for (const auto& c : s.conns) {
          c->close(websocket::close_code::normal, "session complete");
        }
      });
      s.request_stop();
    }
  });
}

void Server::stop() { impl_->request_stop(); }

void Server::wait() {
  {
    std::unique_lock lock(impl_->mu);
    impl_->cv.wait(lock, [this] { return impl_->stop_requested; });
  }
  impl_->shutdown();
}

TeleopSession& Server::session() { return impl_->session; }

std::size_t Server::client_count() const {
  std::promise<std::size_t> p;
  auto f = p.get_future();
  net::post(impl_->ioc, [&] { p.set_value(impl_->conns.size()); });
  if (f.wait_for(std::chrono::seconds(2)) != std::future_status::ready) return 0;
  return f.get();
}

int serve(const ScenarioConfig& config, const std::string& endpoint,
          double duration, const std::string& trace_out) {
  ServerOptions opt;
  opt.duration = duration;
  opt.handle_signals = true;
  std::unique_ptr<Server> server;
  try {
    server = std::make_unique<Server>(config, parse_endpoint(endpoint), opt);
  } catch (const BindError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  std::cerr << "serving ws://" << parse_endpoint(endpoint).host << ':'
            << server->port() << "/ws  (trace at /trace.csv, mode "
            << to_string(config.mode) << ")\n";
  server->start();
  server->wait();
  const Trace trace = server->session().snapshot();
  std::cerr << "session ended after " << trace.size() << " steps\n";
  if (!trace_out.empty()) {
    export_trace(trace, TraceFormat::kCsv, trace_out);
    std::cerr << "wrote " << trace_out << '\n';
  }
  return 0;
}

}  // namespace hsc::teleop
