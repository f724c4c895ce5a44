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

#ifndef ARN_TESTS_SUPPORT_FIXTURES_HPP_
#define ARN_TESTS_SUPPORT_FIXTURES_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arn/human_model.hpp"
#include "arn/sim_engine.hpp"
#include "arn/world.hpp"

namespace arn::testing {

// The bundled office map, loaded once.
const WorldMap& office3();

struct AsciiDoor {
  std::string id;
  std::string from;  // connects[0]
  std::string to;    // connects[1]
  std::string kind = "robot_openable";
  int close_delay_s = 30;
};

struct AsciiStation {
  std::string id;
  Cell cell;
  std::optional<std::string> object;
};

// Builds a map document from a picture. '#' is wall, '+' a door (taken from
// `doors` in row-major order), any other character a cell of the room
// `rooms[ch]`.
nlohmann::json ascii_map_json(const std::vector<std::string>& rows,
                              const std::map<char, std::string>& rooms,
                              const std::vector<AsciiDoor>& doors,
                              const std::vector<AsciiStation>& stations,
                              const std::string& base_station);
WorldMap ascii_map(const std::vector<std::string>& rows, const std::map<char, std::string>& rooms,
                   const std::vector<AsciiDoor>& doors, const std::vector<AsciiStation>& stations,
                   const std::string& base_station);

// Two rooms R1 | R2 joined by one closed robot door "d"; base station in R2.
WorldMap two_room_map();

// A robot standing at `start` that owns `objects` (placed as in the map).
RobotRuntime make_robot(const WorldMap& map, Cell start, std::set<std::string> objects);

struct PlannerScenario {
  std::string name;
  const WorldMap* map;
  SymbolicState state;
  GoalSpec goal;
};

// Small planning problems (at most three objects) shared by the oracle
// comparison test and the acceptance run.
std::vector<PlannerScenario> planner_scenarios();

enum class HumanRegime { kIdle, kBusy, kDone };

// Fraction of `checks` consecutive door checks, each with one robot waiting,
// at which the simulated human opened the door while held in `regime`.
double measure_open_frequency(HumanRegime regime, int checks, std::uint64_t seed,
                              const HumanConfig& base = {});

}  // namespace arn::testing

#endif  // ARN_TESTS_SUPPORT_FIXTURES_HPP_
