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

#include "arn/gateway.hpp"

#include <algorithm>

#include "arn/errors.hpp"

namespace arn {
namespace {

using nlohmann::json;

json cell_json(Cell c) { return json::array({c.x, c.y}); }

Cell cell_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw MalformedMessage("cell must be [x, y], got " + j.dump());
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw MalformedMessage(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

TaskClass class_from(const std::string& s) {
  if (s == "short") return TaskClass::kShort;
  if (s == "long") return TaskClass::kLong;
  throw MalformedMessage("unknown task class '" + s + "'");
}

}  // namespace

Frame snapshot(const Executive& ex) {
  const Simulation& sim = ex.sim();
  Frame f;
  f.t = sim.now();
  for (const RobotRuntime& r : sim.robots()) {
    RobotView v;
    v.id = r.id;
    v.pose = r.pose;
    v.done = r.done();
    if (r.current) {
      const auto& w = r.trajectory.waypoints;
      const auto from = std::min<std::size_t>(static_cast<std::size_t>(r.cursor), w.size());
      v.trajectory.waypoints.assign(w.begin() + static_cast<std::ptrdiff_t>(from), w.end());
      v.next_actions.push_back(r.current->label());
      if (r.phase == ActionPhase::kAwaitingDoor || r.phase == ActionPhase::kAwaitingTurn) {
        v.waiting_at = r.current->target;
      }
    }
    if (v.trajectory.waypoints.empty()) v.trajectory.waypoints.push_back(r.pose.cell());
    for (const auto& a : r.plan.actions) {
      if (v.next_actions.size() >= 3) break;
      v.next_actions.push_back(a.label());
    }
    f.robots.push_back(std::move(v));
  }
  for (const auto& [id, d] : sim.doors()) {
    f.doors.push_back({id, d.open, std::vector<int>(d.queue.begin(), d.queue.end())});
  }
  f.constraints = ex.constraints().list();
  if (!ex.config().live) {
    const HumanState& h = ex.human();
    if (h.busy(sim.now())) f.human.busy_until = h.busy_until;
    f.human.done = h.done;
  }
  return f;
}

nlohmann::json frame_to_json(const Frame& f) {
  json j;
  j["t"] = f.t;
  j["robots"] = json::array();
  for (const auto& r : f.robots) {
    json rj;
    rj["id"] = r.id;
    rj["pose"] = {{"x", r.pose.x}, {"y", r.pose.y}};
    if (r.pose.facing_door) rj["pose"]["facing"] = *r.pose.facing_door;
    rj["trajectory"] = json::array();
    for (Cell c : r.trajectory.waypoints) rj["trajectory"].push_back(cell_json(c));
    rj["next_actions"] = r.next_actions;
    if (r.waiting_at) rj["waiting_at"] = *r.waiting_at;
    rj["done"] = r.done;
    j["robots"].push_back(std::move(rj));
  }
  j["doors"] = json::array();
  for (const auto& d : f.doors) {
    j["doors"].push_back({{"id", d.id}, {"open", d.open}, {"queue", d.queue}});
  }
  j["constraints"] = json::array();
  for (const auto& c : f.constraints) {
    j["constraints"].push_back(
        {{"class", task_class_name(c.deferred)}, {"expires_at", c.expires_at}});
  }
  j["human"] = {{"done", f.human.done}};
  if (f.human.busy_until) j["human"]["busy_until"] = *f.human.busy_until;
  return j;
}

Frame frame_from_json(const nlohmann::json& j) {
  try {
    Frame f;
    f.t = field(j, "t").get<std::int64_t>();
    for (const auto& rj : field(j, "robots")) {
      RobotView r;
      r.id = field(rj, "id").get<int>();
      const json& pose = field(rj, "pose");
      r.pose.x = field(pose, "x").get<int>();
      r.pose.y = field(pose, "y").get<int>();
      if (pose.contains("facing")) r.pose.facing_door = pose.at("facing").get<std::string>();
      for (const auto& c : field(rj, "trajectory")) r.trajectory.waypoints.push_back(cell_from(c));
      r.next_actions = field(rj, "next_actions").get<std::vector<std::string>>();
      if (rj.contains("waiting_at")) r.waiting_at = rj.at("waiting_at").get<std::string>();
      r.done = field(rj, "done").get<bool>();
      f.robots.push_back(std::move(r));
    }
    for (const auto& dj : field(j, "doors")) {
      f.doors.push_back({field(dj, "id").get<std::string>(), field(dj, "open").get<bool>(),
                         field(dj, "queue").get<std::vector<int>>()});
    }
    for (const auto& cj : field(j, "constraints")) {
      f.constraints.push_back({class_from(field(cj, "class").get<std::string>()),
                               field(cj, "expires_at").get<std::int64_t>()});
    }
    const json& h = field(j, "human");
    f.human.done = field(h, "done").get<bool>();
    if (h.contains("busy_until")) f.human.busy_until = h.at("busy_until").get<std::int64_t>();
    return f;
  } catch (const json::exception& e) {
    throw MalformedMessage(std::string("bad frame: ") + e.what());
  }
}

std::string serialize_frame(const Frame& frame) { return frame_to_json(frame).dump(); }

Frame parse_frame(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw MalformedMessage("frame is not valid JSON");
  return frame_from_json(j);
}

Command parse_command(std::string_view text, const WorldMap& map) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw MalformedMessage("message is not a JSON object");
  const json& type = field(j, "type");
  if (!type.is_string()) throw MalformedMessage("'type' must be a string");

  Command c;
  c.source = MessageSource::kGateway;
  if (type == "feedback") {
    const json& kind = field(j, "kind");
    auto parsed = kind.is_string() ? parse_feedback_kind(kind.get<std::string>()) : std::nullopt;
    if (!parsed) throw MalformedMessage("unknown feedback kind " + kind.dump());
    c.kind = Command::Kind::kFeedback;
    c.feedback = *parsed;
    if (j.contains("issued_at_ms")) {
      if (!j["issued_at_ms"].is_number_integer()) {
        throw MalformedMessage("'issued_at_ms' must be an integer");
      }
      c.issued_at_ms = j["issued_at_ms"].get<std::int64_t>();
    }
    return c;
  }
  if (type == "open_door") {
    const json& door = field(j, "door");
    if (!door.is_string()) throw MalformedMessage("'door' must be a string");
    c.kind = Command::Kind::kOpenDoor;
    c.door = map.door(door.get<std::string>()).id;
    return c;
  }
  throw MalformedMessage("unknown message type " + type.dump());
}

nlohmann::json ack_to_json(const Ack& ack) {
  return {{"type", "ack"}, {"of", ack.type}, {"seq", ack.seq}, {"tick", ack.tick}};
}

nlohmann::json error_to_json(std::string_view error, std::string_view message) {
  return {{"type", "error"}, {"error", error}, {"message", message}};
}

Ack Gateway::submit(std::string_view text) {
  Command c = parse_command(text, map_);
  const auto receipt = inbox_.push(c);
  return {receipt.seq, receipt.tick,
          c.kind == Command::Kind::kFeedback ? "feedback" : "open_door"};
}

std::string Gateway::handle(std::string_view text) {
  try {
    return ack_to_json(submit(text)).dump();
  } catch (const MalformedMessage& e) {
    return error_to_json("MalformedMessage", e.what()).dump();
  } catch (const UnknownDoor& e) {
    return error_to_json("UnknownDoor", e.what()).dump();
  }
}

}  // namespace arn
