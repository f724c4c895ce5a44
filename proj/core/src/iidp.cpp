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

#include "arn/iidp.hpp"

#include <algorithm>

#include "arn/errors.hpp"

namespace arn {
namespace {

int overlap(const DoorReservations* reservations, const std::string& door, int start) {
  if (reservations == nullptr) return 0;
  auto it = reservations->find(door);
  if (it == reservations->end()) return 0;
  const int end = start + Durations::kGoThrough;
  int total = 0;
  for (auto [a, b] : it->second) total += std::max(0, std::min(end, b) - std::max(start, a));
  return total;
}

}  // namespace

std::vector<DoorPassage> estimate_passages(const Plan& plan, int start_time,
                                           const DoorReservations* reservations) {
  std::vector<DoorPassage> out;
  int t = start_time;
  std::optional<int> arrival;
  for (const auto& a : plan.actions) {
    switch (a.kind) {
      case ActionKind::kOpenDoor:
        if (!arrival) arrival = t;
        t += a.duration;
        break;
      case ActionKind::kGoThrough: {
        if (!arrival) arrival = t;
        t += overlap(reservations, a.target, t);
        out.push_back({a.target, *arrival, t, t + a.duration});
        t += a.duration;
        arrival.reset();
        break;
      }
      default:
        t += a.duration;
        break;
    }
  }
  return out;
}

TeamPlan plan_team(const std::vector<SymbolicState>& states, const std::vector<GoalSpec>& goals,
                   const WorldMap& map, int now, const std::vector<int>& ready_at) {
  if (states.size() != goals.size()) {
    throw InvalidConfig("plan_team: " + std::to_string(states.size()) + " states but " +
                        std::to_string(goals.size()) + " goals");
  }
  if (!ready_at.empty() && ready_at.size() != states.size()) {
    throw InvalidConfig("plan_team: ready_at size mismatch");
  }
  const std::size_t n = states.size();
  auto start_of = [&](std::size_t i) { return ready_at.empty() ? now : ready_at[i]; };

  TeamPlan team;
  team.plans.resize(n);
  team.unsolved.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      team.plans[i] = plan(states[i], goals[i], map, {start_of(i), nullptr});
    } catch (const Unsolvable&) {
      team.unsolved[i] = true;
    }
  }

  // Reservations made by robots 0..i-1 under the current plans.
  auto reservations_before = [&](std::size_t i) {
    DoorReservations res;
    for (std::size_t j = 0; j < i; ++j) {
      DoorReservations mine;
      for (const auto& p : estimate_passages(team.plans[j], start_of(j), &res)) {
        mine[p.door].push_back({p.start, p.end});
      }
      for (auto& [door, spans] : mine) {
        auto& all = res[door];
        all.insert(all.end(), spans.begin(), spans.end());
      }
    }
    return res;
  };

  for (int round = 1; round <= kIidpMaxRounds && n > 1; ++round) {
    bool changed = false;
    for (std::size_t i = 1; i < n; ++i) {
      if (team.unsolved[i]) continue;
      const DoorReservations res = reservations_before(i);
      Plan p = plan(states[i], goals[i], map, {start_of(i), &res});
      if (!(p == team.plans[i])) {
        team.plans[i] = std::move(p);
        changed = true;
      }
    }
    team.rounds = round;
    if (!changed) break;
  }

  std::map<std::string, std::vector<std::pair<int, int>>> arrivals;  // (time, robot)
  DoorReservations res;
  for (std::size_t i = 0; i < n; ++i) {
    std::map<std::string, int> first;
    DoorReservations mine;
    for (const auto& p : estimate_passages(team.plans[i], start_of(i), &res)) {
      first.try_emplace(p.door, p.arrival);
      mine[p.door].push_back({p.start, p.end});
    }
    for (const auto& [door, t] : first) arrivals[door].push_back({t, static_cast<int>(i)});
    for (auto& [door, spans] : mine) {
      auto& all = res[door];
      all.insert(all.end(), spans.begin(), spans.end());
    }
  }
  for (auto& [door, list] : arrivals) {
    std::sort(list.begin(), list.end());
    auto& order = team.queue_order[door];
    for (auto [t, robot] : list) order.push_back(robot);
  }
  return team;
}

}  // namespace arn
