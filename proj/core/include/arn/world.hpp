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

#ifndef ARN_WORLD_HPP_
#define ARN_WORLD_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arn {

// Grid coordinate. x grows rightward, y downward, both 0-based.
struct Cell {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline int manhattan(Cell a, Cell b) {
  return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

enum class CellKind : std::uint8_t { kFree, kWall, kDoor };

enum class DoorKind : std::uint8_t {
  kRobotOpenable,
  // Robots cannot open it when entering connects[1] from connects[0]; a
  // human must. From the connects[1] side a robot pushes it open itself.
  kHumanOperated,
};

struct Door {
  std::string id;
  Cell cell;
  std::array<std::string, 2> connects;
  DoorKind kind = DoorKind::kRobotOpenable;
  int close_delay_s = 30;
  bool open = false;

  bool adjoins(std::string_view room) const {
    return connects[0] == room || connects[1] == room;
  }
  // The room on the other side of the door from `room`.
  const std::string& other_side(std::string_view room) const {
    return connects[0] == room ? connects[1] : connects[0];
  }
  // True when crossing from `from_room` needs a human to open the door.
  bool needs_human_from(std::string_view from_room) const {
    return kind == DoorKind::kHumanOperated && connects[0] == from_room;
  }

  friend bool operator==(const Door&, const Door&) = default;
};

struct Station {
  std::string id;
  Cell cell;
  std::string room;
  std::optional<std::string> object;

  friend bool operator==(const Station&, const Station&) = default;
};

// Immutable multi-room office map. Build one with load_map().
class WorldMap {
 public:
  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  int index(Cell c) const { return c.y * width_ + c.x; }
  Cell cell_at(int index) const { return {index % width_, index / width_}; }

  CellKind kind_at(Cell c) const;
  bool passable(Cell c) const {
    return in_bounds(c) && kind_at(c) != CellKind::kWall;
  }

  // Name of the room owning `c`, or nullptr for walls and door cells.
  const std::string* room_at(Cell c) const;
  bool has_room(std::string_view name) const;
  const std::vector<std::string>& room_names() const { return room_names_; }
  const std::vector<Cell>& room_cells(std::string_view name) const;

  const std::vector<Door>& doors() const { return doors_; }
  const Door* find_door(std::string_view id) const;
  // Throws UnknownDoor.
  const Door& door(std::string_view id) const;
  // Door occupying cell `c`, if any.
  const Door* door_at(Cell c) const;

  const std::vector<Station>& stations() const { return stations_; }
  const Station* find_station(std::string_view id) const;
  const Station& base_station() const;
  const std::string& base_room() const { return base_station().room; }

  // The cell beside `door` that lies in `room`. Throws UnknownRoom if the
  // door does not adjoin `room`.
  Cell approach_cell(const Door& door, std::string_view room) const;

  const std::vector<Cell>& walls() const { return walls_; }

  friend bool operator==(const WorldMap& a, const WorldMap& b);

 private:
  friend WorldMap load_map(std::string_view text);

  int width_ = 0;
  int height_ = 0;
  std::vector<CellKind> kinds_;
  std::vector<int> room_of_;  // -1 where no room
  std::vector<std::string> room_names_;
  std::vector<std::vector<Cell>> room_cells_;
  std::vector<Cell> walls_;
  std::vector<Door> doors_;
  std::vector<Station> stations_;
  std::string base_station_;
};

// Parses and validates a map document. Throws ParseError or ValidationError.
WorldMap load_map(std::string_view text);
// Reads `path` and calls load_map. Throws MapError when the file is unreadable.
WorldMap load_map_file(const std::filesystem::path& path);
// Canonical JSON form; load_map(serialize_map(m)) == m.
std::string serialize_map(const WorldMap& map);

// The door joining rooms `a` and `b`. Throws UnknownRoom.
std::optional<Door> door_between(const WorldMap& map, std::string_view a,
                                 std::string_view b);

}  // namespace arn

#endif  // ARN_WORLD_HPP_
