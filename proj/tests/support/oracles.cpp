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

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <queue>
#include <sstream>

#include "arn/errors.hpp"

namespace arn::testing {

int bfs_distance(const WorldMap& map, Cell from, Cell to, const std::function<bool(Cell)>& ok) {
  if (!ok(from) || !ok(to)) return -1;
  std::vector<int> dist(map.cell_count(), -1);
  std::deque<Cell> q{from};
  dist[map.index(from)] = 0;
  while (!q.empty()) {
    Cell c = q.front();
    q.pop_front();
    if (c == to) return dist[map.index(c)];
    const Cell nbs[4] = {{c.x + 1, c.y}, {c.x - 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
    for (Cell n : nbs) {
      if (!map.in_bounds(n) || !ok(n) || dist[map.index(n)] >= 0) continue;
      dist[map.index(n)] = dist[map.index(c)] + 1;
      q.push_back(n);
    }
  }
  return -1;
}

int bfs_room_distance(const WorldMap& map, Cell from, Cell to) {
  const std::string* room = map.room_at(from);
  if (room == nullptr) return -1;
  const std::string name = *room;
  return bfs_distance(map, from, to, [&](Cell c) {
    const std::string* r = map.room_at(c);
    return r != nullptr && *r == name;
  });
}

namespace {

std::string key_of(const SymbolicState& s) {
  std::ostringstream k;
  k << s.robot_room << '|' << s.robot_cell.x << ',' << s.robot_cell.y << '|'
    << s.facing_door.value_or("-") << '|' << s.carried.value_or("-") << '|';
  for (const auto& [d, open] : s.door_open) k << d << (open ? '1' : '0');
  k << '|';
  for (const auto& [o, p] : s.object_at) {
    k << o << ':' << static_cast<int>(p.kind) << p.station << ';';
  }
  return k.str();
}

}  // namespace

std::optional<int> uniform_cost_oracle(const SymbolicState& s, const GoalSpec& g,
                                       const WorldMap& map, std::size_t* expanded) {
  std::vector<TaskAction> candidates;
  for (const auto& d : map.doors()) {
    for (ActionKind k : {ActionKind::kApproach, ActionKind::kOpenDoor, ActionKind::kGoThrough}) {
      candidates.push_back({k, d.id, 1, ""});
    }
  }
  for (const auto& [o, place] : s.object_at) {
    candidates.push_back({ActionKind::kLoad, o, 1, ""});
    candidates.push_back({ActionKind::kUnload, o, 1, ""});
  }

  using Entry = std::pair<int, std::string>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::map<std::string, int> best;
  std::map<std::string, SymbolicState> states;
  const std::string k0 = key_of(s);
  best[k0] = 0;
  states[k0] = s;
  open.push({0, k0});
  std::size_t n = 0;
  while (!open.empty()) {
    auto [cost, key] = open.top();
    open.pop();
    if (best[key] < cost) continue;
    const SymbolicState cur = states[key];
    if (satisfies(cur, g)) {
      if (expanded) *expanded = n;
      return cost;
    }
    ++n;
    for (const TaskAction& a : candidates) {
      SymbolicState next;
      int dur = 0;
      try {
        next = apply(cur, a, map);
        dur = action_duration(cur, a, map);
      } catch (const PreconditionViolation&) {
        continue;
      }
      const std::string nk = key_of(next);
      auto it = best.find(nk);
      if (it != best.end() && it->second <= cost + dur) continue;
      best[nk] = cost + dur;
      states[nk] = next;
      open.push({cost + dur, nk});
    }
  }
  if (expanded) *expanded = n;
  return std::nullopt;
}

double u_by_pairs(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0.0;
  for (double x : a) {
    for (double y : b) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  }
  return u;
}

double exact_mann_whitney_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();
  const std::size_t na = a.size();
  const double mean_u = static_cast<double>(na * b.size()) / 2.0;
  const double observed = std::abs(u_by_pairs(a, b) - mean_u);

  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(na), true);
  std::size_t total = 0;
  std::size_t extreme = 0;
  do {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n; ++i) (pick[i] ? x : y).push_back(pooled[i]);
    ++total;
    if (std::abs(u_by_pairs(x, y) - mean_u) >= observed - 1e-9) ++extreme;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace arn::testing
