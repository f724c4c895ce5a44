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

// Template definitions for motion.hpp.

#ifndef ARN_MOTION_INL_HPP_
#define ARN_MOTION_INL_HPP_

#include <array>
#include <climits>
#include <cstdint>
#include <queue>

namespace arn {

template <typename Passable>
std::optional<std::vector<Cell>> astar(const WorldMap& map, Cell from, Cell to,
                                       Passable&& passable) {
  if (!map.in_bounds(from) || !map.in_bounds(to) || !passable(from) || !passable(to)) {
    return std::nullopt;
  }
  struct Entry {
    int f;
    int h;
    std::uint64_t seq;
    int idx;
    bool operator>(const Entry& o) const {
      if (f != o.f) return f > o.f;
      if (h != o.h) return h > o.h;
      return seq > o.seq;
    }
  };
  constexpr std::array<Cell, 4> kOrder = {Cell{0, -1}, Cell{1, 0}, Cell{0, 1}, Cell{-1, 0}};

  const int n = map.cell_count();
  std::vector<int> g(n, INT_MAX);
  std::vector<int> parent(n, -1);
  std::vector<char> closed(n, 0);
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t seq = 0;

  const int start = map.index(from);
  const int goal = map.index(to);
  g[start] = 0;
  open.push({manhattan(from, to), manhattan(from, to), seq++, start});
  while (!open.empty()) {
    Entry e = open.top();
    open.pop();
    if (closed[e.idx]) continue;
    closed[e.idx] = 1;
    if (e.idx == goal) break;
    const Cell c = map.cell_at(e.idx);
    for (Cell off : kOrder) {
      Cell nb{c.x + off.x, c.y + off.y};
      if (!map.in_bounds(nb) || !passable(nb)) continue;
      const int ni = map.index(nb);
      const int cand = g[e.idx] + 1;
      if (closed[ni] || cand >= g[ni]) continue;
      g[ni] = cand;
      parent[ni] = e.idx;
      const int h = manhattan(nb, to);
      open.push({cand + h, h, seq++, ni});
    }
  }
  if (g[goal] == INT_MAX) return std::nullopt;

  std::vector<Cell> path;
  for (int i = goal; i != -1; i = parent[i]) path.push_back(map.cell_at(i));
  return std::vector<Cell>(path.rbegin(), path.rend());
}

}  // namespace arn

#endif  // ARN_MOTION_INL_HPP_
