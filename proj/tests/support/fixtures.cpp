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

#include "support/fixtures.hpp"

#include <stdexcept>

namespace arn::testing {

const WorldMap& office3() {
  static const WorldMap map = load_map_file(ARN_OFFICE3_MAP);
  return map;
}

nlohmann::json ascii_map_json(const std::vector<std::string>& rows,
                              const std::map<char, std::string>& rooms,
                              const std::vector<AsciiDoor>& doors,
                              const std::vector<AsciiStation>& stations,
                              const std::string& base_station) {
  nlohmann::json doc;
  doc["height"] = rows.size();
  doc["width"] = rows.empty() ? 0 : rows[0].size();
  doc["walls"] = nlohmann::json::array();
  doc["rooms"] = nlohmann::json::object();
  doc["doors"] = nlohmann::json::array();
  std::size_t next_door = 0;
  for (std::size_t y = 0; y < rows.size(); ++y) {
    for (std::size_t x = 0; x < rows[y].size(); ++x) {
      const char ch = rows[y][x];
      const nlohmann::json cell = {x, y};
      if (ch == '#') {
        doc["walls"].push_back(cell);
      } else if (ch == '+') {
        if (next_door >= doors.size()) throw std::invalid_argument("picture has too many doors");
        const AsciiDoor& d = doors[next_door++];
        doc["doors"].push_back({{"id", d.id},
                                {"cell", cell},
                                {"connects", {d.from, d.to}},
                                {"kind", d.kind},
                                {"close_delay_s", d.close_delay_s}});
      } else {
        doc["rooms"][rooms.at(ch)].push_back(cell);
      }
    }
  }
  doc["stations"] = nlohmann::json::array();
  for (const auto& s : stations) {
    nlohmann::json st{{"id", s.id}, {"cell", {s.cell.x, s.cell.y}}};
    st["object"] = s.object ? nlohmann::json(*s.object) : nlohmann::json(nullptr);
    doc["stations"].push_back(st);
  }
  doc["base_station"] = base_station;
  return doc;
}

WorldMap ascii_map(const std::vector<std::string>& rows, const std::map<char, std::string>& rooms,
                   const std::vector<AsciiDoor>& doors, const std::vector<AsciiStation>& stations,
                   const std::string& base_station) {
  return load_map(ascii_map_json(rows, rooms, doors, stations, base_station).dump());
}

WorldMap two_room_map() {
  return ascii_map({"#######",
                    "#aa+bb#",
                    "#######"},
                   {{'a', "R1"}, {'b', "R2"}}, {{"d", "R1", "R2"}}, {{"BS", {5, 1}, std::nullopt}},
                   "BS");
}

RobotRuntime make_robot(const WorldMap& map, Cell start, std::set<std::string> objects) {
  RobotRuntime r;
  r.pose = {start.x, start.y, std::nullopt};
  r.symbolic = initial_state(map, start);
  r.goal.objects = std::move(objects);
  return r;
}

std::vector<PlannerScenario> planner_scenarios() {
  static const WorldMap two_rooms = two_room_map();
  const WorldMap& m = office3();
  auto at = [&](const char* station) { return m.find_station(station)->cell; };
  auto beside = [&](const char* door, const char* room) {
    return m.approach_cell(m.door(door), room);
  };
  auto goal = [](std::set<std::string> objects) { return GoalSpec{std::move(objects), {}}; };

  std::vector<PlannerScenario> out;
  out.push_back({"corridor_O1", &m, initial_state(m, beside("d1", "C")), goal({"O1"})});
  out.push_back({"L1_O1", &m, initial_state(m, at("L1")), goal({"O1"})});
  out.push_back({"L1_O2", &m, initial_state(m, at("L1")), goal({"O2"})});
  out.push_back({"L2_O1_O2", &m, initial_state(m, at("L2")), goal({"O1", "O2"})});
  out.push_back({"L3_all", &m, initial_state(m, at("L3")), goal({"O1", "O2", "O3"})});
  out.push_back({"base_O3", &m, initial_state(m, at("BS")), goal({"O3"})});
  out.push_back({"base_O1_O3", &m, initial_state(m, at("BS")), goal({"O1", "O3"})});

  SymbolicState carrying = initial_state(m, beside("d2", "C"));
  carrying.carried = "O2";
  carrying.object_at["O2"] = ObjectPlace::carried();
  out.push_back({"carrying_O2", &m, carrying, goal({"O2"})});

  SymbolicState doors_open = initial_state(m, at("L1"));
  doors_open.door_open["d1"] = true;
  doors_open.door_open["db"] = true;
  out.push_back({"open_doors_O1", &m, doors_open, goal({"O1"})});

  SymbolicState d2_open = initial_state(m, at("L2"));
  d2_open.door_open["d2"] = true;
  out.push_back({"L2_O3_d2_open", &m, d2_open, goal({"O3"})});

  out.push_back({"navigate_to_R2", &m, initial_state(m, beside("db", "C")), GoalSpec{{}, "R2"}});
  out.push_back({"deliver_then_R3", &m, initial_state(m, at("L1")), GoalSpec{{"O1"}, "R3"}});
  out.push_back(
      {"two_rooms", &two_rooms, initial_state(two_rooms, {1, 1}), GoalSpec{{}, "R2"}});
  return out;
}

double measure_open_frequency(HumanRegime regime, int checks, std::uint64_t seed,
                              const HumanConfig& base) {
  HumanConfig cfg = base;
  cfg.mode = Mode::kNoFeedback;
  Rng rng(seed);
  HumanState st = init_human(cfg, rng);
  st.task_remaining_s = 1e12;
  if (regime == HumanRegime::kBusy) st.busy_until = std::int64_t{1} << 50;
  if (regime == HumanRegime::kDone) {
    st.done = true;
    st.finished_at = 0.0;
    st.task_remaining_s = 0.0;
  }
  int opened = 0;
  for (int k = 0; k < checks; ++k) {
    const std::int64_t now = st.next_check;
    for (const auto& a : act_human(st, cfg, 1, now, rng)) {
      if (a.kind == HumanActionKind::kOpenDoor) ++opened;
    }
  }
  return static_cast<double>(opened) / checks;
}

}  // namespace arn::testing
