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

#ifndef ARN_GATEWAY_HPP_
#define ARN_GATEWAY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "arn/executive.hpp"
#include "arn/motion.hpp"
#include "arn/restrictor.hpp"

namespace arn {

struct RobotView {
  int id = 0;
  Pose pose;
  Trajectory trajectory;                // remaining waypoints of the current action
  std::vector<std::string> next_actions;  // up to 3, current first
  std::optional<std::string> waiting_at;
  bool done = false;
  friend bool operator==(const RobotView&, const RobotView&) = default;
};

struct DoorView {
  std::string id;
  bool open = false;
  std::vector<int> queue;
  friend bool operator==(const DoorView&, const DoorView&) = default;
};

struct HumanView {
  std::optional<std::int64_t> busy_until;
  bool done = false;
  friend bool operator==(const HumanView&, const HumanView&) = default;
};

// What the human's display shows at one tick.
struct Frame {
  std::int64_t t = 0;
  std::vector<RobotView> robots;
  std::vector<DoorView> doors;
  std::vector<TimedConstraint> constraints;
  HumanView human;
  friend bool operator==(const Frame&, const Frame&) = default;
};

Frame snapshot(const Executive& executive);

nlohmann::json frame_to_json(const Frame& frame);
// Throws MalformedMessage.
Frame frame_from_json(const nlohmann::json& j);
std::string serialize_frame(const Frame& frame);
Frame parse_frame(std::string_view text);

// Client messages:
//   {"type":"feedback","kind":"busy2"|"busy4","issued_at_ms":int?}
//   {"type":"open_door","door":"<id>"}
// Throws MalformedMessage or UnknownDoor.
Command parse_command(std::string_view text, const WorldMap& map);

struct Ack {
  std::uint64_t seq = 0;
  std::int64_t tick = 0;
  std::string type;
};

nlohmann::json ack_to_json(const Ack& ack);
nlohmann::json error_to_json(std::string_view error, std::string_view message);

// Validates client messages and funnels them into the executive inbox.
class Gateway {
 public:
  Gateway(Inbox& inbox, const WorldMap& map) : inbox_(inbox), map_(map) {}

  // Throws MalformedMessage or UnknownDoor; nothing is enqueued then.
  Ack submit(std::string_view text);
  // Never throws: returns an ack or an error object.
  std::string handle(std::string_view text);

 private:
  Inbox& inbox_;
  const WorldMap& map_;
};

}  // namespace arn

#endif  // ARN_GATEWAY_HPP_
