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

#ifndef ARN_GATEWAY_SERVER_HPP_
#define ARN_GATEWAY_SERVER_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "arn/executive.hpp"
#include "arn/gateway.hpp"

namespace arn {

// WebSocket + HTTP endpoint on a single port. WebSocket clients receive every
// published frame and may send client messages (answered with an ack or
// error object). `GET /frame` returns the latest frame.
class GatewayServer {
 public:
  // port 0 picks an ephemeral port; see port().
  GatewayServer(Gateway& gateway, std::uint16_t port, const std::string& address = "127.0.0.1");
  ~GatewayServer();
  GatewayServer(const GatewayServer&) = delete;
  GatewayServer& operator=(const GatewayServer&) = delete;

  void start();
  void stop();
  std::uint16_t port() const;

  // Thread-safe. Stores the frame for GET /frame and broadcasts it.
  void publish(std::string frame_json);
  std::size_t session_count() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct ServeOptions {
  int tick_ms = 1000;     // wall-clock pacing; 0 runs as fast as possible
  int frame_every = 1;    // broadcast every k ticks
  bool exit_when_done = false;
};

// Drives `executive` one tick at a time, publishing frames, until the trial
// ends (when exit_when_done) or `stop` becomes true.
LoopOutcome serve_loop(Executive& executive, GatewayServer& server, const ServeOptions& options,
                       const std::atomic<bool>& stop);

}  // namespace arn

#endif  // ARN_GATEWAY_SERVER_HPP_
