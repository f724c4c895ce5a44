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

#ifndef ARN_EXECUTIVE_HPP_
#define ARN_EXECUTIVE_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "arn/human_model.hpp"
#include "arn/iidp.hpp"
#include "arn/restrictor.hpp"
#include "arn/sim_engine.hpp"
#include "arn/world.hpp"

namespace arn {

struct TrialConfig {
  std::string map_path;  // informational; trials take a loaded WorldMap
  int n_robots = 3;
  int objects_per_robot = 3;
  std::uint64_t seed = 1;
  HumanConfig human;
  int max_sim_seconds = 7200;
  int short_threshold_s = kShortTaskThresholdSeconds;
  // No simulated human: door and feedback commands arrive through the inbox.
  bool live = false;
  // Test hook: human-operated doors open the moment a robot asks.
  bool scripted_always_open = false;
  bool keep_events = false;

  Mode mode() const { return human.mode; }
  // Throws InvalidConfig.
  void validate() const;
};

struct TrialMetrics {
  double t_h = 0.0;             // human task completion, s
  std::vector<double> t_r;      // per-robot completion, s
  double t_all = 0.0;           // t_h + sum(t_r)
  double t_r_last = 0.0;        // max(t_r)
  double team_time = 0.0;       // max(t_h, t_r_last)
  int door_openings = 0;        // human door-opening actions
  int replans = 0;
  int feedback_events = 0;
  bool timed_out = false;
};

enum class MessageSource : std::uint8_t { kHumanModel, kGateway };

const char* message_source_name(MessageSource s);

struct Command {
  enum class Kind : std::uint8_t { kFeedback, kOpenDoor };
  Kind kind = Kind::kOpenDoor;
  FeedbackKind feedback = FeedbackKind::kBusy4;
  std::string door;  // empty: the human-operated door robots wait at
  MessageSource source = MessageSource::kHumanModel;
  std::optional<std::int64_t> issued_at_ms;
  std::uint64_t seq = 0;
  std::int64_t enqueued_tick = 0;
};

// Thread-safe FIFO between the outside world and the control loop.
class Inbox {
 public:
  struct Receipt {
    std::uint64_t seq = 0;
    std::int64_t tick = 0;
  };

  Receipt push(Command c);
  std::vector<Command> drain();
  std::size_t size() const;
  // The tick the loop will process next; stamped onto pushed commands.
  void set_tick(std::int64_t t) { tick_.store(t); }
  std::int64_t tick() const { return tick_.load(); }

 private:
  mutable std::mutex mu_;
  std::vector<Command> queue_;
  std::uint64_t next_seq_ = 1;
  std::atomic<std::int64_t> tick_{0};
};

// Robots, their objects and their task classes at t = 0. Robots start at the
// loading stations round-robin; robot r owns objects O{r*k+1}..O{r*k+k},
// placed on loading stations starting at index r.
struct TrialSetup {
  std::vector<RobotRuntime> robots;
  TaskClasses classes;
};

TrialSetup build_trial(const WorldMap& map, int n_robots, int objects_per_robot,
                       int short_threshold_s = kShortTaskThresholdSeconds);

enum class LoopOutcome : std::uint8_t { kRunning, kDone, kTimedOut };

// One trial's control loop: human, feedback intake, constraint update,
// replanning and simulation, one second per step().
class Executive {
 public:
  Executive(const WorldMap& map, TrialConfig config);

  // Computes the initial team plan; step() calls it on first use.
  void start();
  LoopOutcome step();
  LoopOutcome run();
  LoopOutcome outcome() const { return outcome_; }

  const WorldMap& map() const { return *map_; }
  const TrialConfig& config() const { return config_; }
  const Simulation& sim() const { return sim_; }
  const ConstraintSet& constraints() const { return constraints_; }
  const TaskClasses& classes() const { return classes_; }
  const HumanState& human() const { return human_; }
  // Goals the current plans pursue, per robot.
  const std::vector<GoalSpec>& active_goals() const { return active_goals_; }
  Inbox& inbox() { return inbox_; }
  const std::vector<SimEvent>& events() const { return events_; }
  void set_event_sink(std::function<void(const SimEvent&)> sink) { sink_ = std::move(sink); }

  TrialMetrics metrics() const;

 private:
  Executive(const WorldMap& map, TrialConfig config, TrialSetup setup);

  void emit(SimEvent e);
  void emit_all(std::vector<SimEvent> events);
  void replan(const char* reason);
  std::string door_for_human(const std::string& requested) const;
  void finish(LoopOutcome outcome);

  const WorldMap* map_;
  TrialConfig config_;
  Rng rng_;
  TaskClasses classes_;
  Simulation sim_;
  HumanState human_;
  bool human_done_logged_ = false;
  ConstraintSet constraints_;
  std::vector<GoalSpec> active_goals_;
  Inbox inbox_;
  std::vector<SimEvent> events_;
  std::function<void(const SimEvent&)> sink_;
  int replans_ = 0;
  int door_openings_ = 0;
  int feedback_events_ = 0;
  bool started_ = false;
  LoopOutcome outcome_ = LoopOutcome::kRunning;
  std::optional<double> t_h_;
};

// Runs one trial to completion. Events go to `log` when given.
TrialMetrics run_trial(const WorldMap& map, const TrialConfig& config,
                       std::vector<SimEvent>* log = nullptr);

}  // namespace arn

#endif  // ARN_EXECUTIVE_HPP_
