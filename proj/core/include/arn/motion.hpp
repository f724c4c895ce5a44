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

#ifndef ARN_MOTION_HPP_
#define ARN_MOTION_HPP_

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "arn/task_planner.hpp"
#include "arn/world.hpp"

namespace arn {

struct Pose {
  int x = 0;
  int y = 0;
  std::optional<std::string> facing_door;

  Cell cell() const { return {x, y}; }
  friend bool operator==(const Pose&, const Pose&) = default;
};

// Cell-level path L_1..L_M; consecutive entries are 4-adjacent or equal.
struct Trajectory {
  std::vector<Cell> waypoints;

  int moves() const { return waypoints.empty() ? 0 : static_cast<int>(waypoints.size()) - 1; }
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// A* with the Manhattan heuristic over cells accepted by `passable`.
// Neighbours expand N, E, S, W. Returns nullopt when `to` is unreachable.
template <typename Passable>
std::optional<std::vector<Cell>> astar(const WorldMap& map, Cell from, Cell to,
                                       Passable&& passable);

// Shortest path from `from` to `to` using only cells of `room`. Throws NoPath.
std::vector<Cell> room_path(const WorldMap& map, const std::string& room, Cell from, Cell to);

// Expands one task action into the trajectory the robot follows from `pose`.
// Approach/Load/Unload stay inside the robot's room; GoThrough crosses only
// its own door. Throws NoPath.
Trajectory plan_trajectory(const Pose& pose, const TaskAction& action, const WorldMap& map);

// BFS distance fields inside rooms, memoised per source cell. Not thread-safe;
// keep one per planning call.
class RoomDistances {
 public:
  explicit RoomDistances(const WorldMap& map) : map_(map) {}
  // Path length from `from` to `to` within their shared room, or -1.
  int distance(Cell from, Cell to);

 private:
  const WorldMap& map_;
  std::unordered_map<int, std::vector<int>> fields_;
};

}  // namespace arn

#include "arn/motion_inl.hpp"

#endif  // ARN_MOTION_HPP_
