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

#ifndef ARN_SIM_ENGINE_HPP_
#define ARN_SIM_ENGINE_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arn/motion.hpp"
#include "arn/task_planner.hpp"
#include "arn/world.hpp"

namespace arn {

enum class EventType : std::uint8_t {
  kActionStarted,
  kActionCompleted,
  kRobotWaitingAtDoor,
  kDoorOpened,
  kDoorClosed,
  kRobotDone,
  kFeedback,
  kReplan,
  kHumanDone,
  kTimeout,
};

const char* event_type_name(EventType type);
std::optional<EventType> parse_event_type(std::string_view name);

struct SimEvent {
  std::int64_t t = 0;
  EventType type = EventType::kActionCompleted;
  int robot = -1;
  std::string door;
  nlohmann::json detail = nlohmann::json::object();
};

// One JSON object per line: {"t","type","robot"?,"door"?,"detail"}.
nlohmann::json event_to_json(const SimEvent& e);
SimEvent event_from_json(const nlohmann::json& j);
void write_event_line(std::ostream& out, const SimEvent& e);

enum class ActionPhase : std::uint8_t {
  kRunning,
  kAwaitingDoor,  // OpenDoor at a human-operated door, door closed
  kAwaitingTurn,  // GoThrough while another robot uses or precedes at the door
};

struct RobotRuntime {
  int id = 0;
  Pose pose;
  SymbolicState symbolic;
  GoalSpec goal;  // full delivery goal, independent of active constraints
  Plan plan;      // remaining actions after `current`
  std::optional<TaskAction> current;
  ActionPhase phase = ActionPhase::kRunning;
  Trajectory trajectory;
  int cursor = 0;
  int elapsed = 0;
  int duration = 0;
  std::optional<std::int64_t> done_at;

  bool done() const { return done_at.has_value(); }
  // Seconds left on the in-flight action; 0 when idle or waiting.
  int remaining() const {
    return current && phase == ActionPhase::kRunning ? std::max(0, duration - elapsed) : 0;
  }
};

struct DoorRuntime {
  bool open = false;
  std::optional<std::int64_t> close_at;
  int occupant = -1;     // robot currently crossing
  std::int64_t free_from = 0;  // the next crossing starts no earlier
  std::deque<int> queue;  // robots waiting to open or cross, FIFO
  // Robots letting themselves out of a human-operated door from the inside.
  // The door stays shut for everyone else.
  std::set<int> passes;

  bool open_for(int robot) const { return open || passes.count(robot) > 0; }
};

struct SimOptions {
  // Human-operated doors open the moment a robot asks.
  bool doors_always_open = false;
};

// Discrete-time world with 1 s ticks. Deterministic: no randomness inside.
class Simulation {
 public:
  Simulation(const WorldMap& map, std::vector<RobotRuntime> robots, SimOptions options = {});

  std::int64_t now() const { return now_; }
  const WorldMap& map() const { return *map_; }
  std::size_t robot_count() const { return robots_.size(); }
  // Throws IndexOutOfRange.
  const RobotRuntime& robot(int i) const;
  const std::vector<RobotRuntime>& robots() const { return robots_; }
  const std::map<std::string, DoorRuntime>& doors() const { return doors_; }
  // Throws UnknownDoor.
  const DoorRuntime& door_state(const std::string& id) const;

  // Advances [now, now + 1) and returns the events it produced.
  std::vector<SimEvent> tick();

  // Opens `door` at the current time and releases robots waiting for it.
  // The first event is the DoorOpened record. Throws UnknownDoor.
  std::vector<SimEvent> open_door(const std::string& door, const std::string& by);

  // Installs a new plan. The in-flight action keeps running; a robot waiting
  // at a door keeps its place only when the new plan starts with the same
  // action.
  void replace_plan(int i, Plan plan);

  // State the robot will be in once its in-flight action completes.
  SymbolicState projected_state(int i) const;

  // Robots currently waiting for a human to open a door.
  int waiting_for_human() const;
  bool all_done() const;

 private:
  void close_expired_doors(std::vector<SimEvent>& events);
  void step(int i, std::vector<SimEvent>& events);
  bool start_next(int i, std::vector<SimEvent>& events);
  bool try_begin_crossing(int i);
  void complete(int i, std::int64_t t, std::vector<SimEvent>& events);
  void leave_queues(int i, const std::string& keep = {});
  void enqueue(int i, const std::string& door);
  bool human_needed(const RobotRuntime& r, const std::string& door) const;
  SymbolicState synced(const RobotRuntime& r) const;

  const WorldMap* map_;
  std::vector<RobotRuntime> robots_;
  std::map<std::string, DoorRuntime> doors_;
  SimOptions options_;
  std::int64_t now_ = 0;
};

// Throws IndexOutOfRange.
Pose get_pose(const Simulation& sim, int i);

}  // namespace arn

#endif  // ARN_SIM_ENGINE_HPP_
