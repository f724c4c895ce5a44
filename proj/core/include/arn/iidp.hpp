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

#ifndef ARN_IIDP_HPP_
#define ARN_IIDP_HPP_

#include <map>
#include <string>
#include <vector>

#include "arn/task_planner.hpp"
#include "arn/world.hpp"

namespace arn {

// Joint plan for N robots; plans[i] belongs to robot i.
struct TeamPlan {
  std::vector<Plan> plans;
  // Robots expected to pass each door, earliest estimated arrival first.
  std::map<std::string, std::vector<int>> queue_order;
  // Robots whose goal set was unreachable; their plans are empty.
  std::vector<bool> unsolved;
  int rounds = 0;
};

inline constexpr int kIidpMaxRounds = 3;

struct DoorPassage {
  std::string door;
  int arrival = 0;  // reaches the door (OpenDoor or GoThrough starts)
  int start = 0;    // GoThrough starts
  int end = 0;
};

// Walks `plan` from `start_time`, delaying each GoThrough by its overlap with
// `reservations`. Returns every door passage in order.
std::vector<DoorPassage> estimate_passages(const Plan& plan, int start_time,
                                           const DoorReservations* reservations = nullptr);

// Iterative inter-dependent planning. Round 0 plans every robot alone; later
// rounds replan robots in index order, charging GoThrough actions for overlap
// with lower-indexed robots' passages, until nothing changes or
// kIidpMaxRounds is reached. `ready_at[i]` (default `now`) is when robot i can
// start its plan. Goals must already be rewritten by the restrictor.
TeamPlan plan_team(const std::vector<SymbolicState>& states, const std::vector<GoalSpec>& goals,
                   const WorldMap& map, int now, const std::vector<int>& ready_at = {});

}  // namespace arn

#endif  // ARN_IIDP_HPP_
