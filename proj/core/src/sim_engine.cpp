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

#include "arn/sim_engine.hpp"

#include <algorithm>
#include <array>

#include "arn/errors.hpp"

namespace arn {
namespace {

constexpr std::array<std::pair<EventType, const char*>, 10> kEventNames{{
    {EventType::kActionStarted, "action_started"},
    {EventType::kActionCompleted, "action_completed"},
    {EventType::kRobotWaitingAtDoor, "robot_waiting_at_door"},
    {EventType::kDoorOpened, "door_opened"},
    {EventType::kDoorClosed, "door_closed"},
    {EventType::kRobotDone, "robot_done"},
    {EventType::kFeedback, "feedback"},
    {EventType::kReplan, "replan"},
    {EventType::kHumanDone, "human_done"},
    {EventType::kTimeout, "timeout"},
}};

bool same_step(const TaskAction& a, const TaskAction& b) {
  return a.kind == b.kind && a.target == b.target;
}

}  // namespace

const char* event_type_name(EventType type) {
  for (auto [t, name] : kEventNames) {
    if (t == type) return name;
  }
  return "?";
}

std::optional<EventType> parse_event_type(std::string_view name) {
  for (auto [t, n] : kEventNames) {
    if (name == n) return t;
  }
  return std::nullopt;
}

nlohmann::json event_to_json(const SimEvent& e) {
  nlohmann::json j;
  j["t"] = e.t;
  j["type"] = event_type_name(e.type);
  if (e.robot >= 0) j["robot"] = e.robot;
  if (!e.door.empty()) j["door"] = e.door;
  j["detail"] = e.detail;
  return j;
}

SimEvent event_from_json(const nlohmann::json& j) {
  try {
    SimEvent e;
    e.t = j.at("t").get<std::int64_t>();
    auto type = parse_event_type(j.at("type").get<std::string>());
    if (!type) throw ParseError("unknown event type " + j.at("type").dump());
    e.type = *type;
    e.robot = j.value("robot", -1);
    e.door = j.value("door", std::string{});
    e.detail = j.value("detail", nlohmann::json::object());
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("bad event record: ") + ex.what());
  }
}

void write_event_line(std::ostream& out, const SimEvent& e) {
  out << event_to_json(e).dump() << '\n';
}

Simulation::Simulation(const WorldMap& map, std::vector<RobotRuntime> robots, SimOptions options)
    : map_(&map), robots_(std::move(robots)), options_(options) {
  for (const Door& d : map.doors()) doors_[d.id].open = d.open;
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    robots_[i].id = static_cast<int>(i);
    if (!map.passable(robots_[i].pose.cell()) || map.room_at(robots_[i].pose.cell()) == nullptr) {
      throw InvalidConfig("robot " + std::to_string(i) + " does not start inside a room");
    }
  }
}

const RobotRuntime& Simulation::robot(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= robots_.size()) {
    throw IndexOutOfRange("robot index " + std::to_string(i) + " out of range [0," +
                          std::to_string(robots_.size()) + ")");
  }
  return robots_[i];
}

const DoorRuntime& Simulation::door_state(const std::string& id) const {
  auto it = doors_.find(id);
  if (it == doors_.end()) throw UnknownDoor("unknown door '" + id + "'");
  return it->second;
}

Pose get_pose(const Simulation& sim, int i) { return sim.robot(i).pose; }

SymbolicState Simulation::synced(const RobotRuntime& r) const {
  SymbolicState s = r.symbolic;
  for (const auto& [id, d] : doors_) s.door_open[id] = d.open_for(r.id);
  return s;
}

bool Simulation::human_needed(const RobotRuntime& r, const std::string& door) const {
  return map_->door(door).needs_human_from(r.symbolic.robot_room);
}

void Simulation::enqueue(int i, const std::string& door) {
  auto& q = doors_.at(door).queue;
  if (std::find(q.begin(), q.end(), i) == q.end()) q.push_back(i);
}

void Simulation::leave_queues(int i, const std::string& keep) {
  for (auto& [id, d] : doors_) {
    if (id == keep) continue;
    d.passes.erase(i);
    d.queue.erase(std::remove(d.queue.begin(), d.queue.end(), i), d.queue.end());
  }
}

int Simulation::waiting_for_human() const {
  int n = 0;
  for (const auto& r : robots_) {
    if (r.current && r.phase == ActionPhase::kAwaitingDoor) ++n;
  }
  return n;
}

bool Simulation::all_done() const {
  return std::all_of(robots_.begin(), robots_.end(), [](const RobotRuntime& r) { return r.done(); });
}

SymbolicState Simulation::projected_state(int i) const {
  const RobotRuntime& r = robot(i);
  SymbolicState s = synced(r);
  if (!r.current || r.phase != ActionPhase::kRunning) return s;
  try {
    return apply(s, *r.current, *map_);
  } catch (const PreconditionViolation& e) {
    throw InternalInconsistency("robot " + std::to_string(i) + ": " + e.what());
  }
}

void Simulation::replace_plan(int i, Plan plan) {
  RobotRuntime& r = robots_.at(static_cast<std::size_t>(i));
  if (r.done()) return;
  if (r.current && r.phase != ActionPhase::kRunning) {
    if (!plan.empty() && same_step(plan.front(), *r.current)) {
      plan.pop();
    } else {
      leave_queues(i);
      r.current.reset();
      r.phase = ActionPhase::kRunning;
    }
  }
  r.plan = std::move(plan);
}

std::vector<SimEvent> Simulation::open_door(const std::string& id, const std::string& by) {
  auto it = doors_.find(id);
  if (it == doors_.end()) throw UnknownDoor("unknown door '" + id + "'");
  DoorRuntime& d = it->second;
  std::vector<SimEvent> events;
  d.open = true;
  d.close_at = now_ + map_->door(id).close_delay_s;
  events.push_back({now_, EventType::kDoorOpened, -1, id, {{"by", by}}});

  std::vector<int> released;
  for (int i : d.queue) {
    const RobotRuntime& r = robots_[i];
    if (r.current && r.phase == ActionPhase::kAwaitingDoor && r.current->target == id) {
      released.push_back(i);
    }
  }
  events.front().detail["released"] = released;
  for (int i : released) complete(i, now_, events);
  return events;
}

void Simulation::close_expired_doors(std::vector<SimEvent>& events) {
  for (auto& [id, d] : doors_) {
    if (!d.open || !d.close_at || *d.close_at > now_ || d.occupant >= 0) continue;
    const bool crossing_soon = std::any_of(d.queue.begin(), d.queue.end(), [&](int i) {
      return robots_[i].current && robots_[i].phase == ActionPhase::kAwaitingTurn;
    });
    if (crossing_soon) continue;
    d.open = false;
    d.close_at.reset();
    events.push_back({now_, EventType::kDoorClosed, -1, id, nlohmann::json::object()});
  }
}

std::vector<SimEvent> Simulation::tick() {
  std::vector<SimEvent> events;
  close_expired_doors(events);
  for (int i = 0; i < static_cast<int>(robots_.size()); ++i) step(i, events);
  ++now_;
  return events;
}

bool Simulation::try_begin_crossing(int i) {
  RobotRuntime& r = robots_[i];
  DoorRuntime& d = doors_.at(r.current->target);
  if (!d.open_for(i) || d.occupant >= 0 || now_ < d.free_from) return false;
  // First come, first served among robots cleared to cross; robots still
  // waiting for the door to open do not hold up the others.
  for (int j : d.queue) {
    if (j == i) break;
    if (robots_[j].current && robots_[j].phase == ActionPhase::kAwaitingTurn) return false;
  }
  d.queue.erase(std::remove(d.queue.begin(), d.queue.end(), i), d.queue.end());
  d.occupant = i;
  r.phase = ActionPhase::kRunning;
  r.trajectory = plan_trajectory(r.pose, *r.current, *map_);
  r.duration = Durations::kGoThrough;
  r.elapsed = 0;
  r.cursor = 0;
  return true;
}

bool Simulation::start_next(int i, std::vector<SimEvent>& events) {
  RobotRuntime& r = robots_[i];
  if (r.plan.empty()) {
    leave_queues(i);
    return false;
  }
  TaskAction a = r.plan.front();
  r.plan.pop();
  const SymbolicState s = synced(r);

  r.elapsed = 0;
  r.cursor = 0;
  r.phase = ActionPhase::kRunning;
  r.trajectory = {{r.pose.cell()}};

  switch (a.kind) {
    case ActionKind::kOpenDoor: {
      if (s.facing_door != a.target) {
        throw InternalInconsistency("robot " + std::to_string(i) + " cannot " + a.label() +
                                    ": not facing the door");
      }
      leave_queues(i, a.target);
      r.current = a;
      if (doors_.at(a.target).open_for(i)) {
        r.duration = 1;
      } else if (human_needed(r, a.target)) {
        if (options_.doors_always_open) {
          auto opened = open_door(a.target, "script");
          events.insert(events.end(), opened.begin(), opened.end());
          r.duration = 1;
        } else {
          r.phase = ActionPhase::kAwaitingDoor;
          enqueue(i, a.target);
          events.push_back({now_, EventType::kActionStarted, i, a.target,
                            {{"action", a.label()}, {"awaiting", "human"}}});
          events.push_back({now_, EventType::kRobotWaitingAtDoor, i, a.target,
                            {{"queue", doors_.at(a.target).queue}}});
          return false;
        }
      } else {
        r.duration = Durations::kOpenRobotDoor;
      }
      break;
    }
    case ActionKind::kGoThrough: {
      if (!doors_.at(a.target).open_for(i)) {
        // The door closed since the plan was made: ask again first.
        r.plan.actions.push_front(a);
        r.plan.actions.push_front(make_action(s, ActionKind::kOpenDoor, a.target, *map_));
        return start_next(i, events);
      }
      leave_queues(i, a.target);
      r.current = a;
      r.phase = ActionPhase::kAwaitingTurn;
      enqueue(i, a.target);
      if (!try_begin_crossing(i)) return false;
      break;
    }
    default: {
      leave_queues(i);
      try {
        apply(s, a, *map_);
        r.duration = action_duration(s, a, *map_);
      } catch (const PreconditionViolation& e) {
        throw InternalInconsistency("robot " + std::to_string(i) + ": " + e.what());
      }
      r.current = a;
      r.trajectory = plan_trajectory(r.pose, a, *map_);
      break;
    }
  }
  events.push_back({now_, EventType::kActionStarted, i, a.is_door_action() ? a.target : "",
                    {{"action", a.label()}, {"duration", r.duration}}});
  return true;
}

void Simulation::step(int i, std::vector<SimEvent>& events) {
  RobotRuntime& r = robots_[i];
  if (r.done()) return;
  if (!r.current && r.plan.empty() && satisfies(r.symbolic, r.goal)) {
    r.done_at = now_;
    leave_queues(i);
    events.push_back({now_, EventType::kRobotDone, i, "", nlohmann::json::object()});
    return;
  }
  if (!r.current && !start_next(i, events)) return;
  if (!r.current) return;

  if (r.phase == ActionPhase::kAwaitingDoor) {
    // Someone else (a robot leaving, say) may have opened it meanwhile.
    if (doors_.at(r.current->target).open) complete(i, now_, events);
    return;
  }
  if (r.phase == ActionPhase::kAwaitingTurn) {
    if (!try_begin_crossing(i)) return;
    events.push_back({now_, EventType::kActionStarted, i, r.current->target,
                      {{"action", r.current->label()}, {"duration", r.duration}}});
  }

  ++r.elapsed;
  if (r.cursor < r.trajectory.moves()) {
    ++r.cursor;
    const Cell c = r.trajectory.waypoints[r.cursor];
    r.pose.x = c.x;
    r.pose.y = c.y;
  }
  if (r.elapsed >= r.duration) complete(i, now_ + 1, events);
}

void Simulation::complete(int i, std::int64_t t, std::vector<SimEvent>& events) {
  RobotRuntime& r = robots_[i];
  const TaskAction a = *r.current;
  SymbolicState next;
  try {
    next = apply(synced(r), a, *map_);
  } catch (const PreconditionViolation& e) {
    throw InternalInconsistency("robot " + std::to_string(i) + ": " + e.what());
  }

  if (a.kind == ActionKind::kOpenDoor && !doors_.at(a.target).open_for(i)) {
    DoorRuntime& d = doors_.at(a.target);
    nlohmann::json detail{{"by", "robot"}, {"robot", i}};
    if (map_->door(a.target).kind == DoorKind::kHumanOperated) {
      d.passes.insert(i);
      detail["exit_only"] = true;
    } else {
      d.open = true;
      d.close_at = t + map_->door(a.target).close_delay_s;
      detail["released"] = nlohmann::json::array();
    }
    events.push_back({t, EventType::kDoorOpened, -1, a.target, std::move(detail)});
  } else if (a.kind == ActionKind::kGoThrough) {
    DoorRuntime& d = doors_.at(a.target);
    d.occupant = -1;
    d.free_from = t;
    d.passes.erase(i);
  }
  r.symbolic = std::move(next);
  if (!r.trajectory.waypoints.empty()) {
    const Cell end = r.trajectory.waypoints.back();
    r.pose.x = end.x;
    r.pose.y = end.y;
  }
  r.pose.facing_door = r.symbolic.facing_door;
  r.current.reset();
  r.phase = ActionPhase::kRunning;
  r.trajectory = {{r.pose.cell()}};
  r.cursor = 0;
  r.elapsed = 0;
  r.duration = 0;
  events.push_back({t, EventType::kActionCompleted, i, a.is_door_action() ? a.target : "",
                    {{"action", a.label()}}});

  if (a.kind != ActionKind::kOpenDoor) leave_queues(i);
  if (r.plan.empty() && satisfies(r.symbolic, r.goal)) {
    r.done_at = t;
    leave_queues(i);
    events.push_back({t, EventType::kRobotDone, i, "", nlohmann::json::object()});
  }
}

}  // namespace arn
