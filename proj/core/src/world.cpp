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

#include "arn/world.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "arn/errors.hpp"

namespace arn {
namespace {

using nlohmann::json;

constexpr std::array<Cell, 4> kNeighborOffsets = {
    Cell{0, -1}, Cell{1, 0}, Cell{0, 1}, Cell{-1, 0}};

Cell parse_cell(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    throw ParseError(std::string(what) + ": expected [x, y]");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

json cell_json(Cell c) { return json::array({c.x, c.y}); }

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

DoorKind parse_door_kind(const std::string& s) {
  if (s == "robot_openable") return DoorKind::kRobotOpenable;
  if (s == "human_operated") return DoorKind::kHumanOperated;
  throw ParseError("unknown door kind '" + s + "'");
}

const char* door_kind_name(DoorKind k) {
  return k == DoorKind::kRobotOpenable ? "robot_openable" : "human_operated";
}

}  // namespace

CellKind WorldMap::kind_at(Cell c) const { return kinds_[index(c)]; }

const std::string* WorldMap::room_at(Cell c) const {
  if (!in_bounds(c)) return nullptr;
  int r = room_of_[index(c)];
  return r < 0 ? nullptr : &room_names_[r];
}

bool WorldMap::has_room(std::string_view name) const {
  return std::binary_search(room_names_.begin(), room_names_.end(), name);
}

const std::vector<Cell>& WorldMap::room_cells(std::string_view name) const {
  auto it = std::lower_bound(room_names_.begin(), room_names_.end(), name);
  if (it == room_names_.end() || *it != name) {
    throw UnknownRoom("unknown room '" + std::string(name) + "'");
  }
  return room_cells_[it - room_names_.begin()];
}

const Door* WorldMap::find_door(std::string_view id) const {
  for (const auto& d : doors_) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

const Door& WorldMap::door(std::string_view id) const {
  if (const Door* d = find_door(id)) return *d;
  throw UnknownDoor("unknown door '" + std::string(id) + "'");
}

const Door* WorldMap::door_at(Cell c) const {
  for (const auto& d : doors_) {
    if (d.cell == c) return &d;
  }
  return nullptr;
}

const Station* WorldMap::find_station(std::string_view id) const {
  for (const auto& s : stations_) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const Station& WorldMap::base_station() const { return *find_station(base_station_); }

Cell WorldMap::approach_cell(const Door& door, std::string_view room) const {
  if (!door.adjoins(room)) {
    throw UnknownRoom("door '" + door.id + "' does not adjoin room '" +
                      std::string(room) + "'");
  }
  for (Cell off : kNeighborOffsets) {
    Cell n{door.cell.x + off.x, door.cell.y + off.y};
    const std::string* r = room_at(n);
    if (r != nullptr && *r == room) return n;
  }
  // Validation guarantees a neighbour on each side.
  throw ValidationError("door not on boundary");
}

bool operator==(const WorldMap& a, const WorldMap& b) {
  return a.width_ == b.width_ && a.height_ == b.height_ && a.kinds_ == b.kinds_ &&
         a.room_of_ == b.room_of_ && a.room_names_ == b.room_names_ &&
         a.doors_ == b.doors_ && a.stations_ == b.stations_ &&
         a.base_station_ == b.base_station_;
}

WorldMap load_map(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("map is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("map must be a JSON object");

  WorldMap m;
  try {
    m.width_ = require(doc, "width").get<int>();
    m.height_ = require(doc, "height").get<int>();
  } catch (const json::type_error&) {
    throw ParseError("width/height must be integers");
  }
  if (m.width_ <= 0 || m.height_ <= 0) {
    throw ValidationError("width and height must be positive");
  }
  m.kinds_.assign(m.cell_count(), CellKind::kFree);
  m.room_of_.assign(m.cell_count(), -1);

  auto check_bounds = [&](Cell c, const std::string& what) {
    if (!m.in_bounds(c)) {
      throw ValidationError(what + " (" + std::to_string(c.x) + "," +
                            std::to_string(c.y) + ") is out of bounds");
    }
  };

  const json& walls = require(doc, "walls");
  if (!walls.is_array()) throw ParseError("'walls' must be an array");
  std::set<Cell> wall_set;
  for (const auto& w : walls) {
    Cell c = parse_cell(w, "wall");
    check_bounds(c, "wall");
    wall_set.insert(c);
  }
  m.walls_.assign(wall_set.begin(), wall_set.end());
  for (Cell c : m.walls_) m.kinds_[m.index(c)] = CellKind::kWall;

  const json& doors = require(doc, "doors");
  if (!doors.is_array()) throw ParseError("'doors' must be an array");
  std::set<std::string> door_ids;
  for (const auto& d : doors) {
    if (!d.is_object()) throw ParseError("door entries must be objects");
    Door door;
    door.id = require_string(d, "id");
    door.cell = parse_cell(require(d, "cell"), "door cell");
    const json& conn = require(d, "connects");
    if (!conn.is_array() || conn.size() != 2 || !conn[0].is_string() ||
        !conn[1].is_string()) {
      throw ParseError("door '" + door.id + "': connects must be two room names");
    }
    door.connects = {conn[0].get<std::string>(), conn[1].get<std::string>()};
    door.kind = parse_door_kind(require_string(d, "kind"));
    const json& delay = require(d, "close_delay_s");
    if (!delay.is_number_integer()) {
      throw ParseError("door '" + door.id + "': close_delay_s must be an integer");
    }
    door.close_delay_s = delay.get<int>();
    if (auto it = d.find("open"); it != d.end()) door.open = it->get<bool>();

    if (!door_ids.insert(door.id).second) {
      throw ValidationError("duplicate door id '" + door.id + "'");
    }
    check_bounds(door.cell, "door '" + door.id + "'");
    if (m.kinds_[m.index(door.cell)] != CellKind::kFree) {
      throw ValidationError("door '" + door.id + "' overlaps a wall or door");
    }
    if (door.connects[0] == door.connects[1]) {
      throw ValidationError("door '" + door.id + "' must connect two distinct rooms");
    }
    if (door.close_delay_s <= 0) {
      throw ValidationError("door '" + door.id + "': close_delay_s must be positive");
    }
    m.kinds_[m.index(door.cell)] = CellKind::kDoor;
    m.doors_.push_back(std::move(door));
  }

  const json& rooms = require(doc, "rooms");
  if (!rooms.is_object()) throw ParseError("'rooms' must be an object");
  for (const auto& [name, cells] : rooms.items()) {  // keys arrive sorted
    if (!cells.is_array()) throw ParseError("room '" + name + "' must list cells");
    int idx = static_cast<int>(m.room_names_.size());
    m.room_names_.push_back(name);
    std::set<Cell> unique;
    for (const auto& cj : cells) {
      Cell c = parse_cell(cj, "room cell");
      check_bounds(c, "room '" + name + "' cell");
      if (m.kinds_[m.index(c)] != CellKind::kFree) {
        throw ValidationError("room '" + name + "' contains a wall or door cell");
      }
      if (m.room_of_[m.index(c)] >= 0 && m.room_of_[m.index(c)] != idx) {
        throw ValidationError("cell claimed by two rooms");
      }
      m.room_of_[m.index(c)] = idx;
      unique.insert(c);
    }
    m.room_cells_.emplace_back(unique.begin(), unique.end());
  }
  for (int i = 0; i < m.cell_count(); ++i) {
    if (m.kinds_[i] == CellKind::kFree && m.room_of_[i] < 0) {
      Cell c = m.cell_at(i);
      throw ValidationError("free cell (" + std::to_string(c.x) + "," +
                            std::to_string(c.y) + ") belongs to no room");
    }
  }

  std::set<std::pair<std::string, std::string>> joined;
  for (const Door& door : m.doors_) {
    for (const auto& r : door.connects) {
      if (!m.has_room(r)) {
        throw ValidationError("door '" + door.id + "' references unknown room '" + r + "'");
      }
    }
    bool side[2] = {false, false};
    for (Cell off : kNeighborOffsets) {
      const std::string* r = m.room_at({door.cell.x + off.x, door.cell.y + off.y});
      if (r == nullptr) continue;
      if (*r == door.connects[0]) side[0] = true;
      if (*r == door.connects[1]) side[1] = true;
    }
    if (!side[0] || !side[1]) throw ValidationError("door not on boundary");
    auto key = std::minmax(door.connects[0], door.connects[1]);
    if (!joined.emplace(key.first, key.second).second) {
      throw ValidationError("rooms '" + key.first + "' and '" + key.second +
                            "' are joined by more than one door");
    }
  }

  const json& stations = require(doc, "stations");
  if (!stations.is_array()) throw ParseError("'stations' must be an array");
  std::set<std::string> station_ids;
  std::set<std::string> objects;
  for (const auto& s : stations) {
    if (!s.is_object()) throw ParseError("station entries must be objects");
    Station st;
    st.id = require_string(s, "id");
    st.cell = parse_cell(require(s, "cell"), "station cell");
    if (auto it = s.find("object"); it != s.end() && !it->is_null()) {
      if (!it->is_string()) throw ParseError("station object must be a string");
      st.object = it->get<std::string>();
    }
    if (!station_ids.insert(st.id).second) {
      throw ValidationError("duplicate station id '" + st.id + "'");
    }
    check_bounds(st.cell, "station '" + st.id + "'");
    const std::string* room = m.room_at(st.cell);
    if (room == nullptr) {
      throw ValidationError("station '" + st.id + "' is not on a free room cell");
    }
    st.room = *room;
    if (st.object && !objects.insert(*st.object).second) {
      throw ValidationError("object '" + *st.object + "' placed at two stations");
    }
    m.stations_.push_back(std::move(st));
  }

  m.base_station_ = require_string(doc, "base_station");
  if (m.find_station(m.base_station_) == nullptr) {
    throw ValidationError("base_station '" + m.base_station_ + "' is not a station");
  }

  // Free and door cells must form one 4-connected component.
  std::vector<char> seen(m.cell_count(), 0);
  int passable = 0;
  int start = -1;
  for (int i = 0; i < m.cell_count(); ++i) {
    if (m.kinds_[i] != CellKind::kWall) {
      ++passable;
      if (start < 0) start = i;
    }
  }
  int reached = 0;
  if (start >= 0) {
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      Cell c = m.cell_at(stack.back());
      stack.pop_back();
      ++reached;
      for (Cell off : kNeighborOffsets) {
        Cell n{c.x + off.x, c.y + off.y};
        if (!m.passable(n) || seen[m.index(n)]) continue;
        seen[m.index(n)] = 1;
        stack.push_back(m.index(n));
      }
    }
  }
  if (reached != passable) throw ValidationError("disconnected free-cell graph");

  return m;
}

WorldMap load_map_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MapError("cannot read map file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_map(buf.str());
}

std::string serialize_map(const WorldMap& m) {
  json doc;
  doc["width"] = m.width();
  doc["height"] = m.height();
  json walls = json::array();
  for (Cell c : m.walls()) walls.push_back(cell_json(c));
  doc["walls"] = std::move(walls);
  json rooms = json::object();
  for (const auto& name : m.room_names()) {
    json cells = json::array();
    for (Cell c : m.room_cells(name)) cells.push_back(cell_json(c));
    rooms[name] = std::move(cells);
  }
  doc["rooms"] = std::move(rooms);
  json doors = json::array();
  for (const Door& d : m.doors()) {
    json dj{{"id", d.id},
            {"cell", cell_json(d.cell)},
            {"connects", json::array({d.connects[0], d.connects[1]})},
            {"kind", door_kind_name(d.kind)},
            {"close_delay_s", d.close_delay_s}};
    if (d.open) dj["open"] = true;
    doors.push_back(std::move(dj));
  }
  doc["doors"] = std::move(doors);
  json stations = json::array();
  for (const Station& s : m.stations()) {
    json sj{{"id", s.id}, {"cell", cell_json(s.cell)}};
    sj["object"] = s.object ? json(*s.object) : json(nullptr);
    stations.push_back(std::move(sj));
  }
  doc["stations"] = std::move(stations);
  doc["base_station"] = m.base_station().id;
  return doc.dump();
}

std::optional<Door> door_between(const WorldMap& map, std::string_view a,
                                 std::string_view b) {
  for (auto r : {a, b}) {
    if (!map.has_room(r)) throw UnknownRoom("unknown room '" + std::string(r) + "'");
  }
  if (a == b) return std::nullopt;
  for (const Door& d : map.doors()) {
    if (d.adjoins(a) && d.adjoins(b)) return d;
  }
  return std::nullopt;
}

}  // namespace arn
