// Copyright 2026 The ARN Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arn/gateway_server.hpp"

#include <chrono>
#include <deque>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "arn/errors.hpp"

namespace arn {
namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

}  // namespace

struct GatewayServer::Impl : std::enable_shared_from_this<GatewayServer::Impl> {
  class WsSession;
  class HttpSession;

  Impl(Gateway& g, std::uint16_t port, const std::string& address)
      : gateway(g), acceptor(ioc) {
    tcp::endpoint ep(asio::ip::make_address(address), port);
    acceptor.open(ep.protocol());
    acceptor.set_option(asio::socket_base::reuse_address(true));
    acceptor.bind(ep);
    acceptor.listen(asio::socket_base::max_listen_connections);
  }

  void accept();
  void broadcast(const std::shared_ptr<const std::string>& msg);

  std::string latest() {
    std::lock_guard<std::mutex> lock(frame_mu);
    return latest_frame;
  }

  Gateway& gateway;
  asio::io_context ioc;
  tcp::acceptor acceptor;
  std::thread thread;
  std::mutex frame_mu;
  std::string latest_frame;
  std::vector<std::weak_ptr<WsSession>> sessions;  // io thread only
  std::atomic<std::size_t> live_sessions{0};
};

class GatewayServer::Impl::WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket&& socket, std::shared_ptr<Impl> server)
      : ws_(std::move(socket)), server_(std::move(server)) {}

  void run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      self->on_accept(ec);
    });
  }

  void send(std::shared_ptr<const std::string> msg) {
    if (closed_) return;
    outbox_.push_back(std::move(msg));
    if (outbox_.size() == 1) do_write();
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    server_->sessions.push_back(weak_from_this());
    ++server_->live_sessions;
    std::string frame = server_->latest();
    if (!frame.empty()) send(std::make_shared<const std::string>(std::move(frame)));
    do_read();
  }

  void do_read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->on_read(ec);
    });
  }

  void on_read(beast::error_code ec) {
    if (ec) {
      close();
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    send(std::make_shared<const std::string>(server_->gateway.handle(text)));
    do_read();
  }

  void do_write() {
    ws_.text(true);
    ws_.async_write(asio::buffer(*outbox_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) {
                        self->close();
                        return;
                      }
                      self->outbox_.pop_front();
                      if (!self->outbox_.empty()) self->do_write();
                    });
  }

  void close() {
    if (closed_) return;
    closed_ = true;
    outbox_.clear();
    --server_->live_sessions;
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> outbox_;
  std::shared_ptr<Impl> server_;
  bool closed_ = false;
};

class GatewayServer::Impl::HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, std::shared_ptr<Impl> server)
      : stream_(std::move(socket)), server_(std::move(server)) {}

  void run() { do_read(); }

 private:
  void do_read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) {
                       self->on_read(ec);
                     });
  }

  void on_read(beast::error_code ec) {
    if (ec == http::error::end_of_stream) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    if (ec) return;
    if (websocket::is_upgrade(req_)) {
      stream_.expires_never();
      std::make_shared<WsSession>(stream_.release_socket(), server_)->run(std::move(req_));
      return;
    }

    auto res = std::make_shared<http::response<http::string_body>>();
    res->version(req_.version());
    res->keep_alive(req_.keep_alive());
    res->set(http::field::content_type, "application/json");
    res->set(http::field::access_control_allow_origin, "*");
    if (req_.method() == http::verb::get && req_.target() == "/frame") {
      std::string frame = server_->latest();
      if (frame.empty()) {
        res->result(http::status::service_unavailable);
        res->body() = error_to_json("NoFrame", "no frame published yet").dump();
      } else {
        res->result(http::status::ok);
        res->body() = std::move(frame);
      }
    } else {
      res->result(http::status::not_found);
      res->body() = error_to_json("NotFound", std::string(req_.target())).dump();
    }
    res->prepare_payload();
    http::async_write(stream_, *res,
                      [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
                        if (ec) return;
                        if (!res->keep_alive()) {
                          self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
                          return;
                        }
                        self->do_read();
                      });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  std::shared_ptr<Impl> server_;
};

void GatewayServer::Impl::accept() {
  acceptor.async_accept([self = shared_from_this()](beast::error_code ec, tcp::socket socket) {
    if (ec) return;  // acceptor closed
    std::make_shared<HttpSession>(std::move(socket), self)->run();
    self->accept();
  });
}

void GatewayServer::Impl::broadcast(const std::shared_ptr<const std::string>& msg) {
  std::vector<std::weak_ptr<WsSession>> alive;
  for (auto& w : sessions) {
    if (auto s = w.lock()) {
      s->send(msg);
      alive.push_back(w);
    }
  }
  sessions.swap(alive);
}

GatewayServer::GatewayServer(Gateway& gateway, std::uint16_t port, const std::string& address) {
  try {
    impl_ = std::make_shared<Impl>(gateway, port, address);
  } catch (const boost::system::system_error& e) {
    throw InvalidConfig("cannot listen on " + address + ":" + std::to_string(port) + ": " +
                        e.what());
  }
}

GatewayServer::~GatewayServer() { stop(); }

void GatewayServer::start() {
  if (impl_->thread.joinable()) return;
  impl_->accept();
  impl_->thread = std::thread([impl = impl_] { impl->ioc.run(); });
}

void GatewayServer::stop() {
  if (!impl_) return;
  impl_->ioc.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::uint16_t GatewayServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void GatewayServer::publish(std::string frame_json) {
  auto msg = std::make_shared<const std::string>(frame_json);
  {
    std::lock_guard<std::mutex> lock(impl_->frame_mu);
    impl_->latest_frame = std::move(frame_json);
  }
  asio::post(impl_->ioc, [impl = impl_, msg] { impl->broadcast(msg); });
}

std::size_t GatewayServer::session_count() const { return impl_->live_sessions.load(); }

LoopOutcome serve_loop(Executive& executive, GatewayServer& server, const ServeOptions& options,
                       const std::atomic<bool>& stop) {
  using clock = std::chrono::steady_clock;
  const int every = std::max(1, options.frame_every);
  executive.start();
  server.publish(serialize_frame(snapshot(executive)));
  auto next = clock::now();
  while (!stop.load()) {
    if (executive.outcome() == LoopOutcome::kRunning) {
      executive.step();
      const bool finished = executive.outcome() != LoopOutcome::kRunning;
      if (executive.sim().now() % every == 0 || finished) {
        server.publish(serialize_frame(snapshot(executive)));
      }
      if (finished && options.exit_when_done) break;
    } else if (options.exit_when_done) {
      break;
    }
    if (options.tick_ms > 0) {
      next += std::chrono::milliseconds(options.tick_ms);
      std::this_thread::sleep_until(next);
    } else if (executive.outcome() != LoopOutcome::kRunning) {
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }
  return executive.outcome();
}

}  // namespace arn
