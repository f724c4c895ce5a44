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

#include <gtest/gtest.h>

#include <random>

#include "arn/errors.hpp"
#include "arn/task_planner.hpp"
#include "support/fixtures.hpp"

namespace arn {
namespace {

using testing::office3;

SymbolicState fold(SymbolicState s, const Plan& p, const WorldMap& m) {
  for (const auto& a : p.actions) s = apply(s, a, m);
  return s;
}

TEST(Plan, GoldenTwoRoomNavigation) {
  const WorldMap m = testing::two_room_map();
  Plan p = plan(initial_state(m, {1, 1}), GoalSpec{{}, "R2"}, m);
  EXPECT_EQ(dump_plan(p), "approach(d,0).\nopendoor(d,1).\ngothrough(d,2).\n");
}

TEST(Plan, AlreadySatisfiedIsEmpty) {
  const WorldMap& m = office3();
  SymbolicState s = initial_state(m, m.base_station().cell);
  s.object_at["O1"] = ObjectPlace::base();
  EXPECT_TRUE(plan(s, GoalSpec{{"O1"}, {}}, m).empty());
  EXPECT_TRUE(plan(s, GoalSpec{}, m).empty());
}

TEST(Plan, UnknownObjectIsUnsolvable) {
  const WorldMap& m = office3();
  EXPECT_THROW(plan(initial_state(m, m.base_station().cell), GoalSpec{{"O42"}, {}}, m), Unsolvable);
}

TEST(Plan, FixtureDeliveryShape) {
  const WorldMap& m = office3();
  Plan p = plan(initial_state(m, m.find_station("L1")->cell), GoalSpec{{"O1"}, {}}, m);
  EXPECT_EQ(dump_plan(p),
            "load(O1,0).\napproach(d1,1).\nopendoor(d1,2).\ngothrough(d1,3).\n"
            "approach(db,4).\nopendoor(db,5).\ngothrough(db,6).\nunload(O1,7).\n");
  // Hand ledger: at L1, 7 cells to the d1 approach cell, 26 corridor cells
  // to the db approach cell, 3 cells from the db landing to the base station.
  EXPECT_EQ(p.total_duration(), 10 + 7 + 5 + 3 + 26 + 20 + 3 + (3 + 10));
}

TEST(Plan, SoundAndGoalReaching) {
  for (const auto& sc : testing::planner_scenarios()) {
    Plan p = plan(sc.state, sc.goal, *sc.map);
    SymbolicState end;
    ASSERT_NO_THROW(end = fold(sc.state, p, *sc.map)) << sc.name;
    EXPECT_TRUE(satisfies(end, sc.goal)) << sc.name;
    int total = 0;
    SymbolicState s = sc.state;
    for (const auto& a : p.actions) {
      EXPECT_EQ(a.duration, action_duration(s, a, *sc.map)) << sc.name << " " << a.label();
      EXPECT_GT(a.duration, 0);
      total += a.duration;
      s = apply(s, a, *sc.map);
    }
    EXPECT_EQ(total, p.total_duration());
  }
}

TEST(Plan, AddingGoalsNeverLowersCost) {
  const WorldMap& m = office3();
  for (const char* start : {"L1", "L2", "L3", "BS"}) {
    SymbolicState s = initial_state(m, m.find_station(start)->cell);
    const int one = plan(s, GoalSpec{{"O2"}, {}}, m).total_duration();
    const int two = plan(s, GoalSpec{{"O2", "O3"}, {}}, m).total_duration();
    const int three = plan(s, GoalSpec{{"O1", "O2", "O3"}, {}}, m).total_duration();
    EXPECT_LE(one, two) << start;
    EXPECT_LE(two, three) << start;
  }
}

TEST(Plan, Deterministic) {
  const WorldMap& m = office3();
  SymbolicState s = initial_state(m, m.find_station("L2")->cell);
  GoalSpec g{{"O1", "O2", "O3"}, {}};
  EXPECT_EQ(plan(s, g, m), plan(s, g, m));
}

TEST(Plan, ReservationsDelayCrossing) {
  const WorldMap& m = office3();
  SymbolicState s = initial_state(m, m.find_station("L1")->cell);
  GoalSpec g{{"O1"}, {}};
  const int free = plan(s, g, m).total_duration();
  // The db crossing starts 74 s into the plan; block it for 10 s.
  DoorReservations busy{{"db", {{70, 80}}}};
  PlanOptions opts;
  opts.reservations = &busy;
  Plan p = plan(s, g, m, opts);
  EXPECT_EQ(p.total_duration(), free);  // nominal durations unchanged
  DoorReservations none{{"db", {{500, 600}}}};
  opts.reservations = &none;
  EXPECT_EQ(plan(s, g, m, opts), plan(s, g, m));
}

TEST(Apply, OpenDoorFacing) {
  const WorldMap& m = office3();
  SymbolicState s = initial_state(m, m.find_station("L1")->cell);
  s = apply(s, make_action(s, ActionKind::kApproach, "d1", m), m);
  ASSERT_FALSE(s.is_open("d1"));
  SymbolicState next = apply(s, make_action(s, ActionKind::kOpenDoor, "d1", m), m);
  EXPECT_TRUE(next.door_open.at("d1"));
}

TEST(Apply, OpenDoorNotFacing) {
  const WorldMap& m = office3();
  SymbolicState s = initial_state(m, m.find_station("L1")->cell);
  TaskAction open{ActionKind::kOpenDoor, "d1", 5, ""};
  try {
    apply(s, open, m);
    FAIL() << "expected PreconditionViolation";
  } catch (const PreconditionViolation& e) {
    EXPECT_NE(std::string(e.what()).find("not facing door D"), std::string::npos);
  }
}

TEST(Apply, UnloadAtBase) {
  const WorldMap& m = office3();
  SymbolicState s = initial_state(m, m.base_station().cell);
  s.carried = "O1";
  s.object_at["O1"] = ObjectPlace::carried();
  SymbolicState next = apply(s, make_action(s, ActionKind::kUnload, "O1", m), m);
  EXPECT_EQ(next.object_at.at("O1"), ObjectPlace::base());
  EXPECT_FALSE(next.carried.has_value());
}

TEST(Apply, RejectsBadActions) {
  const WorldMap& m = office3();
  SymbolicState s = initial_state(m, m.find_station("L1")->cell);
  EXPECT_THROW(apply(s, {ActionKind::kGoThrough, "d1", 3, ""}, m), PreconditionViolation);
  EXPECT_THROW(apply(s, {ActionKind::kApproach, "db", 1, ""}, m), PreconditionViolation);
  EXPECT_THROW(apply(s, {ActionKind::kLoad, "O2", 10, ""}, m), PreconditionViolation);
  EXPECT_THROW(apply(s, {ActionKind::kUnload, "O1", 10, ""}, m), PreconditionViolation);
  EXPECT_THROW(apply(s, {ActionKind::kApproach, "zz", 1, ""}, m), PreconditionViolation);
}

TEST(Apply, GoThroughChangesRoomOnly) {
  const WorldMap& m = office3();
  SymbolicState s = initial_state(m, m.find_station("L1")->cell);
  s = apply(s, make_action(s, ActionKind::kApproach, "d1", m), m);
  s = apply(s, make_action(s, ActionKind::kOpenDoor, "d1", m), m);
  SymbolicState after = apply(s, make_action(s, ActionKind::kGoThrough, "d1", m), m);
  EXPECT_EQ(after.robot_room, "C");
  EXPECT_EQ(after.object_at, s.object_at);
}

TEST(Satisfies, Examples) {
  const WorldMap& m = office3();
  SymbolicState s = initial_state(m, m.base_station().cell);
  EXPECT_FALSE(satisfies(s, GoalSpec{{"O1"}, {}}));
  for (auto& [o, p] : s.object_at) p = ObjectPlace::base();
  EXPECT_TRUE(satisfies(s, GoalSpec{{"O1", "O2", "O3"}, {}}));
  EXPECT_FALSE(satisfies(s, GoalSpec{{"O1"}, "R1"}));
}

TEST(Satisfies, AgreesWithLiteralCheck) {
  std::mt19937_64 rng(7);
  const WorldMap& m = office3();
  const std::vector<std::string> objs{"O1", "O2", "O3"};
  for (int trial = 0; trial < 500; ++trial) {
    SymbolicState s = initial_state(m, m.base_station().cell);
    for (const auto& o : objs) {
      switch (rng() % 3) {
        case 0: s.object_at[o] = ObjectPlace::base(); break;
        case 1: s.object_at[o] = ObjectPlace::carried(); break;
        default: break;
      }
    }
    GoalSpec g;
    for (const auto& o : objs) {
      if (rng() % 2) g.objects.insert(o);
    }
    bool expect = true;
    for (const auto& o : g.objects) expect = expect && s.object_at.at(o).kind == ObjectPlace::Kind::kBase;
    EXPECT_EQ(satisfies(s, g), expect);
  }
}

}  // namespace
}  // namespace arn
