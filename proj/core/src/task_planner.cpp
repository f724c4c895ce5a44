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

#include "arn/task_planner.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "arn/errors.hpp"
#include "arn/motion.hpp"

namespace arn {
namespace {

const Door& known_door(const WorldMap& map, const TaskAction& a) {
  const Door* d = map.find_door(a.target);
  if (d == nullptr) throw PreconditionViolation(a.label(), "unknown door " + a.target);
  return *d;
}

void check_preconditions(const SymbolicState& s, const TaskAction& a, const WorldMap& map) {
  const std::string label = a.label();
  switch (a.kind) {
    case ActionKind::kApproach: {
      const Door& d = known_door(map, a);
      if (!d.adjoins(s.robot_room)) {
        throw PreconditionViolation(label, "door " + d.id + " does not adjoin robot room");
      }
      if (s.facing_door == d.id) throw PreconditionViolation(label, "already facing door " + d.id);
      return;
    }
    case ActionKind::kOpenDoor:
      known_door(map, a);
      if (s.facing_door != a.target) throw PreconditionViolation(label, "not facing door D");
      return;
    case ActionKind::kGoThrough:
      known_door(map, a);
      if (s.facing_door != a.target) throw PreconditionViolation(label, "not facing door D");
      if (!s.is_open(a.target)) throw PreconditionViolation(label, "door " + a.target + " is closed");
      return;
    case ActionKind::kLoad: {
      auto it = s.object_at.find(a.target);
      if (it == s.object_at.end()) throw PreconditionViolation(label, "unknown object " + a.target);
      if (it->second.kind != ObjectPlace::Kind::kStation) {
        throw PreconditionViolation(label, "object " + a.target + " is not at a station");
      }
      const Station* st = map.find_station(it->second.station);
      if (st == nullptr || st->room != s.robot_room) {
        throw PreconditionViolation(label, "robot is not in the object's station room");
      }
      if (s.facing_door) throw PreconditionViolation(label, "robot is facing a door");
      if (s.carried) throw PreconditionViolation(label, "robot already carries an object");
      return;
    }
    case ActionKind::kUnload:
      if (s.carried != a.target) throw PreconditionViolation(label, "robot does not carry " + a.target);
      if (s.robot_room != map.base_room()) throw PreconditionViolation(label, "robot is not in the base room");
      return;
  }
}

int path_or_throw(RoomDistances& dist, Cell from, Cell to, const TaskAction& a) {
  int d = dist.distance(from, to);
  if (d < 0) throw PreconditionViolation(a.label(), "target unreachable inside the room");
  return d;
}

int duration_with(RoomDistances& dist, const SymbolicState& s, const TaskAction& a,
                  const WorldMap& map) {
  switch (a.kind) {
    case ActionKind::kApproach: {
      const Door& d = known_door(map, a);
      if (!d.adjoins(s.robot_room)) {
        throw PreconditionViolation(a.label(), "door " + d.id + " does not adjoin robot room");
      }
      int cells = path_or_throw(dist, s.robot_cell, map.approach_cell(d, s.robot_room), a);
      return std::max(1, cells * Durations::kSecondsPerCell);
    }
    case ActionKind::kOpenDoor:
      return known_door(map, a).needs_human_from(s.robot_room) ? Durations::kOpenHumanDoorEstimate
                                                               : Durations::kOpenRobotDoor;
    case ActionKind::kGoThrough:
      return Durations::kGoThrough;
    case ActionKind::kLoad: {
      auto it = s.object_at.find(a.target);
      if (it == s.object_at.end() || it->second.kind != ObjectPlace::Kind::kStation) {
        throw PreconditionViolation(a.label(), "object " + a.target + " is not at a station");
      }
      const Station* st = map.find_station(it->second.station);
      if (st == nullptr) throw PreconditionViolation(a.label(), "unknown station");
      return path_or_throw(dist, s.robot_cell, st->cell, a) * Durations::kSecondsPerCell +
             Durations::kLoad;
    }
    case ActionKind::kUnload:
      return path_or_throw(dist, s.robot_cell, map.base_station().cell, a) *
                 Durations::kSecondsPerCell +
             Durations::kUnload;
  }
  return 1;
}

// ---------------------------------------------------------------------------
// Search internals. States are packed into a fixed-size key; only objects in
// the goal (plus whatever the robot carries) are tracked.

constexpr int kMaxTracked = 16;
constexpr std::int8_t kAtBase = -2;
constexpr std::int8_t kCarried = -1;

struct Key {
  std::int32_t cell = 0;
  std::int16_t room = 0;
  std::int8_t facing = -1;   // door index
  std::int8_t carried = -1;  // tracked object index
  std::uint64_t open = 0;    // door bitmask
  std::array<std::int8_t, kMaxTracked> obj{};

  bool operator==(const Key& o) const {
    return cell == o.cell && room == o.room && facing == o.facing && carried == o.carried &&
           open == o.open && obj == o.obj;
  }
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint32_t>(k.cell));
    mix(static_cast<std::uint16_t>(k.room));
    mix(static_cast<std::uint8_t>(k.facing));
    mix(static_cast<std::uint8_t>(k.carried));
    mix(k.open);
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::memcpy(&a, k.obj.data(), 8);
    std::memcpy(&b, k.obj.data() + 8, 8);
    mix(a);
    mix(b);
    return static_cast<std::size_t>(h);
  }
};

struct Node {
  Key key;
  int cost = 0;
  int parent = -1;
  ActionKind kind = ActionKind::kApproach;
  std::int16_t target = -1;  // door or tracked-object index
  int duration = 0;          // nominal, excluding surcharge
  std::vector<std::uint16_t> seq;
};

class Search {
 public:
  Search(const SymbolicState& s, const GoalSpec& goal, const WorldMap& map,
         const PlanOptions& options)
      : map_(map), dist_(map), options_(options) {
    for (const auto& d : map.doors()) doors_.push_back(&d);
    std::sort(doors_.begin(), doors_.end(),
              [](const Door* a, const Door* b) { return a->id < b->id; });
    if (doors_.size() > 64) throw InvalidConfig("planner supports at most 64 doors");

    std::set<std::string> tracked(goal.objects.begin(), goal.objects.end());
    if (s.carried) tracked.insert(*s.carried);
    objects_.assign(tracked.begin(), tracked.end());
    if (objects_.size() > kMaxTracked) {
      throw InvalidConfig("planner tracks at most 16 objects per robot");
    }
    for (const auto& o : objects_) is_goal_.push_back(goal.objects.count(o) > 0);
    for (const auto& st : map.stations()) stations_.push_back(&st);

    const auto& rooms = map.room_names();
    base_room_ = static_cast<int>(
        std::lower_bound(rooms.begin(), rooms.end(), map.base_room()) - rooms.begin());

    for (const Door* d : doors_) {
      std::array<Cell, 2> cells{map.approach_cell(*d, d->connects[0]),
                                map.approach_cell(*d, d->connects[1])};
      std::array<int, 2> rooms_idx{room_index(d->connects[0]), room_index(d->connects[1])};
      door_cells_.push_back(cells);
      door_rooms_.push_back(rooms_idx);
    }

    if (goal.robot_in) {
      if (!map.has_room(*goal.robot_in)) throw UnknownRoom("unknown room '" + *goal.robot_in + "'");
      goal_room_ = room_index(*goal.robot_in);
    }
    start_ = encode(s);
  }

  Plan run() {
    auto less = [this](int a, int b) {  // true when a orders before b
      const Node& x = nodes_[a];
      const Node& y = nodes_[b];
      if (x.cost != y.cost) return x.cost < y.cost;
      return x.seq < y.seq;
    };
    auto cmp = [&less](int a, int b) { return less(b, a); };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> open(cmp);

    nodes_.push_back(Node{start_, 0, -1, ActionKind::kApproach, -1, 0, {}});
    best_[start_] = 0;
    open.push(0);

    while (!open.empty()) {
      const int cur = open.top();
      open.pop();
      if (best_[nodes_[cur].key] != cur) continue;
      if (is_goal(nodes_[cur].key)) return reconstruct(cur);
      expand(cur, less, open);
    }
    throw Unsolvable("goal unreachable");
  }

 private:
  int room_index(const std::string& name) const {
    const auto& rooms = map_.room_names();
    return static_cast<int>(std::lower_bound(rooms.begin(), rooms.end(), name) - rooms.begin());
  }

  Key encode(const SymbolicState& s) const {
    Key k;
    k.cell = map_.index(s.robot_cell);
    k.room = static_cast<std::int16_t>(room_index(s.robot_room));
    k.obj.fill(0);
    for (std::size_t i = 0; i < doors_.size(); ++i) {
      if (s.is_open(doors_[i]->id)) k.open |= (std::uint64_t{1} << i);
      if (s.facing_door == doors_[i]->id) k.facing = static_cast<std::int8_t>(i);
    }
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      auto it = s.object_at.find(objects_[i]);
      if (it == s.object_at.end()) throw Unsolvable("object " + objects_[i] + " is on no station");
      switch (it->second.kind) {
        case ObjectPlace::Kind::kBase:
          k.obj[i] = kAtBase;
          break;
        case ObjectPlace::Kind::kCarried:
          k.obj[i] = kCarried;
          k.carried = static_cast<std::int8_t>(i);
          break;
        case ObjectPlace::Kind::kStation: {
          int idx = -1;
          for (std::size_t j = 0; j < stations_.size(); ++j) {
            if (stations_[j]->id == it->second.station) idx = static_cast<int>(j);
          }
          if (idx < 0) throw Unsolvable("object " + objects_[i] + " is on no station");
          k.obj[i] = static_cast<std::int8_t>(idx);
          break;
        }
      }
    }
    if (s.carried && k.carried < 0) throw Unsolvable("carried object has no location");
    return k;
  }

  bool is_goal(const Key& k) const {
    if (goal_room_ >= 0 && k.room != goal_room_) return false;
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      if (is_goal_[i] && k.obj[i] != kAtBase) return false;
    }
    return true;
  }

  int surcharge(int door, int start) const {
    if (options_.reservations == nullptr) return 0;
    auto it = options_.reservations->find(doors_[door]->id);
    if (it == options_.reservations->end()) return 0;
    const int end = start + Durations::kGoThrough;
    int overlap = 0;
    for (auto [a, b] : it->second) overlap += std::max(0, std::min(end, b) - std::max(start, a));
    return overlap;
  }

  template <typename Less, typename Queue>
  void expand(int cur, const Less& less, Queue& open) {
    const Key k = nodes_[cur].key;
    const Cell here = map_.cell_at(k.cell);
    const int now = options_.start_time + nodes_[cur].cost;

    auto push = [&](Key next, ActionKind kind, int target, int duration, int extra) {
      Node n;
      n.key = next;
      n.cost = nodes_[cur].cost + duration + extra;
      n.parent = cur;
      n.kind = kind;
      n.target = static_cast<std::int16_t>(target);
      n.duration = duration;
      n.seq = nodes_[cur].seq;
      n.seq.push_back(static_cast<std::uint16_t>(static_cast<int>(kind) * 1024 + target));
      const int idx = static_cast<int>(nodes_.size());
      nodes_.push_back(std::move(n));
      auto [it, inserted] = best_.try_emplace(next, idx);
      if (!inserted) {
        if (!less(idx, it->second)) {
          nodes_.pop_back();
          return;
        }
        it->second = idx;
      }
      open.push(idx);
    };

    for (int d = 0; d < static_cast<int>(doors_.size()); ++d) {
      int side = door_rooms_[d][0] == k.room ? 0 : (door_rooms_[d][1] == k.room ? 1 : -1);
      if (side < 0) continue;
      const bool open_now = (k.open >> d) & 1U;
      if (k.facing != d) {
        const Cell target = door_cells_[d][side];
        const int cells = dist_.distance(here, target);
        if (cells < 0) continue;
        Key next = k;
        next.cell = map_.index(target);
        next.facing = static_cast<std::int8_t>(d);
        push(next, ActionKind::kApproach, d, std::max(1, cells * Durations::kSecondsPerCell), 0);
        continue;
      }
      if (!open_now) {
        Key next = k;
        next.open |= (std::uint64_t{1} << d);
        const int dur = doors_[d]->needs_human_from(doors_[d]->connects[side])
                            ? Durations::kOpenHumanDoorEstimate
                            : Durations::kOpenRobotDoor;
        push(next, ActionKind::kOpenDoor, d, dur, 0);
      } else {
        Key next = k;
        next.room = static_cast<std::int16_t>(door_rooms_[d][1 - side]);
        next.cell = map_.index(door_cells_[d][1 - side]);
        next.facing = -1;
        next.open &= ~(std::uint64_t{1} << d);
        push(next, ActionKind::kGoThrough, d, Durations::kGoThrough, surcharge(d, now));
      }
    }

    if (k.facing < 0 && k.carried < 0) {
      for (int o = 0; o < static_cast<int>(objects_.size()); ++o) {
        if (!is_goal_[o] || k.obj[o] < 0) continue;
        const Station* st = stations_[k.obj[o]];
        const int cells = dist_.distance(here, st->cell);
        if (cells < 0) continue;
        Key next = k;
        next.cell = map_.index(st->cell);
        next.carried = static_cast<std::int8_t>(o);
        next.obj[o] = kCarried;
        push(next, ActionKind::kLoad, o, cells * Durations::kSecondsPerCell + Durations::kLoad, 0);
      }
    }

    if (k.carried >= 0 && k.room == base_room_) {
      const Cell base = map_.base_station().cell;
      const int cells = dist_.distance(here, base);
      if (cells >= 0) {
        Key next = k;
        next.cell = map_.index(base);
        next.obj[k.carried] = kAtBase;
        next.carried = -1;
        next.facing = -1;
        push(next, ActionKind::kUnload, k.carried,
             cells * Durations::kSecondsPerCell + Durations::kUnload, 0);
      }
    }
  }

  Plan reconstruct(int goal) const {
    std::vector<int> chain;
    for (int i = goal; nodes_[i].parent >= 0; i = nodes_[i].parent) chain.push_back(i);
    Plan p;
    std::vector<std::string> station_of(objects_.size());
    for (std::size_t o = 0; o < objects_.size(); ++o) {
      if (start_.obj[o] >= 0) station_of[o] = stations_[start_.obj[o]]->id;
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const Node& n = nodes_[*it];
      TaskAction a;
      a.kind = n.kind;
      a.duration = n.duration;
      if (n.kind == ActionKind::kLoad || n.kind == ActionKind::kUnload) {
        a.target = objects_[n.target];
        a.station = n.kind == ActionKind::kLoad ? station_of[n.target] : map_.base_station().id;
      } else {
        a.target = doors_[n.target]->id;
      }
      p.actions.push_back(std::move(a));
    }
    return p;
  }

  const WorldMap& map_;
  RoomDistances dist_;
  PlanOptions options_;
  std::vector<const Door*> doors_;
  std::vector<std::array<Cell, 2>> door_cells_;
  std::vector<std::array<int, 2>> door_rooms_;
  std::vector<std::string> objects_;
  std::vector<bool> is_goal_;
  std::vector<const Station*> stations_;
  int base_room_ = 0;
  int goal_room_ = -1;
  Key start_;
  std::vector<Node> nodes_;
  std::unordered_map<Key, int, KeyHash> best_;
};

}  // namespace

const char* action_kind_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::kApproach:
      return "approach";
    case ActionKind::kOpenDoor:
      return "opendoor";
    case ActionKind::kGoThrough:
      return "gothrough";
    case ActionKind::kLoad:
      return "load";
    case ActionKind::kUnload:
      return "unload";
  }
  return "?";
}

std::string TaskAction::label() const {
  return std::string(action_kind_name(kind)) + "(" + target + ")";
}

int Plan::total_duration() const {
  int total = 0;
  for (const auto& a : actions) total += a.duration;
  return total;
}

SymbolicState initial_state(const WorldMap& map, Cell start) {
  const std::string* room = map.room_at(start);
  if (room == nullptr) throw InvalidConfig("start cell is not inside a room");
  SymbolicState s;
  s.robot_room = *room;
  s.robot_cell = start;
  for (const auto& d : map.doors()) s.door_open[d.id] = d.open;
  for (const auto& st : map.stations()) {
    if (st.object) s.object_at[*st.object] = ObjectPlace::at(st.id);
  }
  return s;
}

int action_duration(const SymbolicState& s, const TaskAction& action, const WorldMap& map) {
  RoomDistances dist(map);
  return duration_with(dist, s, action, map);
}

TaskAction make_action(const SymbolicState& s, ActionKind kind, std::string target,
                       const WorldMap& map) {
  TaskAction a;
  a.kind = kind;
  a.target = std::move(target);
  if (kind == ActionKind::kLoad) {
    auto it = s.object_at.find(a.target);
    if (it != s.object_at.end() && it->second.kind == ObjectPlace::Kind::kStation) {
      a.station = it->second.station;
    }
  } else if (kind == ActionKind::kUnload) {
    a.station = map.base_station().id;
  }
  a.duration = action_duration(s, a, map);
  return a;
}

SymbolicState apply(const SymbolicState& s, const TaskAction& a, const WorldMap& map) {
  check_preconditions(s, a, map);
  SymbolicState next = s;
  switch (a.kind) {
    case ActionKind::kApproach: {
      const Door& d = map.door(a.target);
      next.facing_door = d.id;
      next.robot_cell = map.approach_cell(d, s.robot_room);
      break;
    }
    case ActionKind::kOpenDoor:
      next.door_open[a.target] = true;
      break;
    case ActionKind::kGoThrough: {
      const Door& d = map.door(a.target);
      next.robot_room = d.other_side(s.robot_room);
      next.robot_cell = map.approach_cell(d, next.robot_room);
      next.facing_door.reset();
      // Doors swing shut behind the robot; a later crossing must reopen.
      next.door_open[a.target] = false;
      break;
    }
    case ActionKind::kLoad: {
      const Station* st = map.find_station(s.object_at.at(a.target).station);
      next.robot_cell = st->cell;
      next.carried = a.target;
      next.object_at[a.target] = ObjectPlace::carried();
      break;
    }
    case ActionKind::kUnload:
      next.robot_cell = map.base_station().cell;
      next.carried.reset();
      next.facing_door.reset();
      next.object_at[a.target] = ObjectPlace::base();
      break;
  }
  return next;
}

bool satisfies(const SymbolicState& s, const GoalSpec& goal) {
  if (goal.robot_in && s.robot_room != *goal.robot_in) return false;
  for (const auto& o : goal.objects) {
    auto it = s.object_at.find(o);
    if (it == s.object_at.end() || it->second.kind != ObjectPlace::Kind::kBase) return false;
  }
  return true;
}

Plan plan(const SymbolicState& s, const GoalSpec& goal, const WorldMap& map,
          const PlanOptions& options) {
  for (const auto& o : goal.objects) {
    if (!s.object_at.count(o)) throw Unsolvable("object " + o + " is on no station");
  }
  if (satisfies(s, goal)) return {};
  return Search(s, goal, map, options).run();
}

std::string dump_plan(const Plan& p) {
  std::ostringstream out;
  int step = 0;
  for (const auto& a : p.actions) {
    out << action_kind_name(a.kind) << "(" << a.target << "," << step++ << ").\n";
  }
  return out.str();
}

}  // namespace arn
