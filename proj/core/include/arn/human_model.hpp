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

#ifndef ARN_HUMAN_MODEL_HPP_
#define ARN_HUMAN_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "arn/restrictor.hpp"

namespace arn {

// Communication regime of a trial.
enum class Mode : std::uint8_t { kFeedback, kNoFeedback, kNoComm };

const char* mode_name(Mode mode);  // "feedback" / "nofeedback" / "nocomm"
std::optional<Mode> parse_mode(std::string_view name);

using Rng = std::mt19937_64;

struct HumanConfig {
  Mode mode = Mode::kFeedback;
  double task_mean_s = 960.0;
  double task_sd_s = 180.0;
  int check_period_s = 20;
  double p_open_idle = 0.6;   // per waiting robot, per check
  double p_open_busy = 0.2;   // until an announced busy interval ends
  double p_open_done = 0.9;   // after the own task is finished
  // Feedback opportunities arrive at gaps ~ N(mean, sd); at each one the
  // human presses a busy button with this probability (Feedback mode only).
  double p_announce = 0.9;
  double feedback_gap_mean_s = 180.0;
  double feedback_gap_sd_s = 60.0;
  // Blind door trips when robots cannot signal at all.
  int blind_period_s = 60;
  double p_blind_open = 0.6;
  int door_trip_s = 15;
  // Replaces p_open_idle when set (laziness sweeps).
  std::optional<double> laziness_override;

  double open_probability_idle() const { return laziness_override.value_or(p_open_idle); }
  // Throws InvalidConfig.
  void validate() const;
};

struct HumanState {
  double task_remaining_s = 0.0;
  std::optional<std::int64_t> busy_until;  // end of the announced busy interval
  std::int64_t next_check = 0;
  std::int64_t next_feedback = 0;
  std::int64_t trip_until = 0;  // walking to/from a door; task paused
  bool done = false;
  std::optional<double> finished_at;
  int door_openings = 0;
  int feedback_sent = 0;

  bool busy(std::int64_t now) const { return busy_until && *busy_until > now; }
};

enum class HumanActionKind : std::uint8_t { kOpenDoor, kFeedback };

struct HumanAction {
  HumanActionKind kind = HumanActionKind::kOpenDoor;
  FeedbackKind feedback = FeedbackKind::kBusy4;
};

// Draws the task duration and the first feedback opportunity.
HumanState init_human(const HumanConfig& config, Rng& rng);

// Door-open probability for one check with `waiting_robots` robots queued.
double open_probability(const HumanConfig& config, const HumanState& state, int waiting_robots,
                        std::int64_t now);

// Advances the human by one second starting at `now`. Decisions are taken at
// the instant `now`; task progress covers [now, now + 1).
std::vector<HumanAction> act_human(HumanState& state, const HumanConfig& config,
                                   int waiting_robots, std::int64_t now, Rng& rng);

// Time at which the human finishes when nothing else interrupts after `now`.
double projected_finish(const HumanState& state, std::int64_t now);

}  // namespace arn

#endif  // ARN_HUMAN_MODEL_HPP_
