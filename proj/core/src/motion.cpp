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

#include "arn/motion.hpp"

#include <deque>

#include "arn/errors.hpp"

namespace arn {
namespace {

std::string describe(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

const std::string& room_of_pose(const WorldMap& map, Cell c) {
  const std::string* room = map.room_at(c);
  if (room == nullptr) throw NoPath("pose " + describe(c) + " is not inside a room");
  return *room;
}

}  // namespace

std::vector<Cell> room_path(const WorldMap& map, const std::string& room, Cell from,
                            Cell to) {
  auto in_room = [&](Cell c) {
    const std::string* r = map.room_at(c);
    return r != nullptr && *r == room;
  };
  auto path = astar(map, from, to, in_room);
  if (!path) {
    throw NoPath("no path from " + describe(from) + " to " + describe(to) + " in room '" +
                 room + "'");
  }
  return std::move(*path);
}

Trajectory plan_trajectory(const Pose& pose, const TaskAction& action, const WorldMap& map) {
  const Cell here = pose.cell();
  const std::string& room = room_of_pose(map, here);

  switch (action.kind) {
    case ActionKind::kOpenDoor:
      return {{here}};
    case ActionKind::kApproach: {
      const Door& door = map.door(action.target);
      if (!door.adjoins(room)) {
        throw NoPath("door '" + door.id + "' does not adjoin room '" + room + "'");
      }
      return {room_path(map, room, here, map.approach_cell(door, room))};
    }
    case ActionKind::kGoThrough: {
      const Door& door = map.door(action.target);
      if (!door.adjoins(room)) {
        throw NoPath("door '" + door.id + "' does not adjoin room '" + room + "'");
      }
      auto path = room_path(map, room, here, map.approach_cell(door, room));
      path.push_back(door.cell);
      path.push_back(map.approach_cell(door, door.other_side(room)));
      return {std::move(path)};
    }
    case ActionKind::kLoad:
    case ActionKind::kUnload: {
      const Station* st = action.station.empty()
                              ? (action.kind == ActionKind::kUnload ? &map.base_station() : nullptr)
                              : map.find_station(action.station);
      if (st == nullptr) throw NoPath("action " + action.label() + " has no station");
      if (st->room != room) {
        throw NoPath("station '" + st->id + "' is not in room '" + room + "'");
      }
      return {room_path(map, room, here, st->cell)};
    }
  }
  return {{here}};
}

int RoomDistances::distance(Cell from, Cell to) {
  const std::string* room = map_.room_at(from);
  const std::string* dest = map_.room_at(to);
  if (room == nullptr || dest == nullptr || *room != *dest) return -1;

  const int src = map_.index(from);
  auto it = fields_.find(src);
  if (it == fields_.end()) {
    std::vector<int> dist(map_.cell_count(), -1);
    std::deque<int> frontier{src};
    dist[src] = 0;
    while (!frontier.empty()) {
      const int cur = frontier.front();
      frontier.pop_front();
      const Cell c = map_.cell_at(cur);
      for (Cell off : {Cell{0, -1}, Cell{1, 0}, Cell{0, 1}, Cell{-1, 0}}) {
        Cell nb{c.x + off.x, c.y + off.y};
        const std::string* r = map_.room_at(nb);
        if (r == nullptr || *r != *room) continue;
        const int ni = map_.index(nb);
        if (dist[ni] >= 0) continue;
        dist[ni] = dist[cur] + 1;
        frontier.push_back(ni);
      }
    }
    it = fields_.emplace(src, std::move(dist)).first;
  }
  return it->second[map_.index(to)];
}

}  // namespace arn
