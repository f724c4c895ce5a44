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

#ifndef ARN_TASK_PLANNER_HPP_
#define ARN_TASK_PLANNER_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arn/world.hpp"

namespace arn {

// Declaration order is the tie-break order among equal-cost plans.
enum class ActionKind : std::uint8_t { kApproach, kOpenDoor, kGoThrough, kLoad, kUnload };

const char* action_kind_name(ActionKind kind);

// Fixed action durations in seconds.
struct Durations {
  static constexpr int kOpenRobotDoor = 5;
  // Planning-time estimate for "request and wait" at a human-operated door.
  static constexpr int kOpenHumanDoorEstimate = 20;
  static constexpr int kGoThrough = 3;
  static constexpr int kLoad = 10;
  static constexpr int kUnload = 10;
  static constexpr int kSecondsPerCell = 1;
};

struct TaskAction {
  ActionKind kind = ActionKind::kApproach;
  std::string target;   // door id or object id
  int duration = 1;     // seconds, > 0
  std::string station;  // Load/Unload: where the object is picked up or dropped

  bool is_door_action() const {
    return kind == ActionKind::kApproach || kind == ActionKind::kOpenDoor ||
           kind == ActionKind::kGoThrough;
  }
  // "opendoor(d1)"
  std::string label() const;

  friend bool operator==(const TaskAction&, const TaskAction&) = default;
};

struct ObjectPlace {
  enum class Kind : std::uint8_t { kStation, kCarried, kBase };
  Kind kind = Kind::kStation;
  std::string station;

  static ObjectPlace at(std::string station) { return {Kind::kStation, std::move(station)}; }
  static ObjectPlace carried() { return {Kind::kCarried, {}}; }
  static ObjectPlace base() { return {Kind::kBase, {}}; }

  friend bool operator==(const ObjectPlace&, const ObjectPlace&) = default;
};

// One robot's view of the world. `robot_cell` anchors where inside
// `robot_room` the robot stands, so approach durations can be costed.
struct SymbolicState {
  std::string robot_room;
  Cell robot_cell;
  std::optional<std::string> facing_door;
  std::optional<std::string> carried;
  std::map<std::string, bool> door_open;
  std::map<std::string, ObjectPlace> object_at;

  bool is_open(const std::string& door) const {
    auto it = door_open.find(door);
    return it != door_open.end() && it->second;
  }

  friend bool operator==(const SymbolicState&, const SymbolicState&) = default;
};

// Front of the queue is the next action to execute.
struct Plan {
  std::deque<TaskAction> actions;

  bool empty() const { return actions.empty(); }
  std::size_t size() const { return actions.size(); }
  const TaskAction& front() const { return actions.front(); }
  void pop() { actions.pop_front(); }
  int total_duration() const;

  friend bool operator==(const Plan&, const Plan&) = default;
};

// Conjunction of located(object, base) literals. `robot_in` adds a
// "robot is in room" literal, used for navigation subgoals.
struct GoalSpec {
  std::set<std::string> objects;
  std::optional<std::string> robot_in;
  friend bool operator==(const GoalSpec&, const GoalSpec&) = default;
};

// Busy intervals [start, end) at doors, in absolute seconds. Used to charge
// GoThrough actions that would overlap a teammate's passage.
using DoorReservations = std::map<std::string, std::vector<std::pair<int, int>>>;

struct PlanOptions {
  int start_time = 0;
  const DoorReservations* reservations = nullptr;
};

// State with the robot standing at `start`, all doors as in the map, and
// each station object at its station.
SymbolicState initial_state(const WorldMap& map, Cell start);

// Nominal duration of `action` when started in `s`. Throws PreconditionViolation
// when the action is malformed for `s` (e.g. loading an object that is not on a station).
int action_duration(const SymbolicState& s, const TaskAction& action, const WorldMap& map);

// Builds a fully costed action, filling duration and station from `s`.
TaskAction make_action(const SymbolicState& s, ActionKind kind, std::string target,
                       const WorldMap& map);

// Successor of `s` under `action`. Throws PreconditionViolation.
SymbolicState apply(const SymbolicState& s, const TaskAction& action, const WorldMap& map);

bool satisfies(const SymbolicState& s, const GoalSpec& goal);

// Minimum total-duration plan reaching `goal`; ties broken by action kind,
// then target id, position by position. Throws Unsolvable.
Plan plan(const SymbolicState& s, const GoalSpec& goal, const WorldMap& map,
          const PlanOptions& options = {});

// "approach(d1,0).\nopendoor(d1,1).\n..."
std::string dump_plan(const Plan& plan);

}  // namespace arn

#endif  // ARN_TASK_PLANNER_HPP_
