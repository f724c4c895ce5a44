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

#include "arn/human_model.hpp"

#include <algorithm>
#include <cmath>

#include "arn/errors.hpp"

namespace arn {
namespace {

double truncated_normal(double mean, double sd, double lower, Rng& rng) {
  std::normal_distribution<double> dist(mean, sd);
  for (int i = 0; i < 1000; ++i) {
    const double v = dist(rng);
    if (v >= lower) return v;
  }
  return lower;
}

std::int64_t draw_gap(const HumanConfig& c, Rng& rng) {
  return std::llround(truncated_normal(c.feedback_gap_mean_s, c.feedback_gap_sd_s, 30.0, rng));
}

double per_robot_probability(const HumanConfig& config, const HumanState& state,
                             std::int64_t now) {
  if (state.done) return config.p_open_done;
  if (state.busy(now)) return config.p_open_busy;
  return config.open_probability_idle();
}

bool probability_ok(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::kFeedback:
      return "feedback";
    case Mode::kNoFeedback:
      return "nofeedback";
    case Mode::kNoComm:
      return "nocomm";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "feedback") return Mode::kFeedback;
  if (name == "nofeedback") return Mode::kNoFeedback;
  if (name == "nocomm") return Mode::kNoComm;
  return std::nullopt;
}

void HumanConfig::validate() const {
  auto prob = [](const char* what, double p) {
    if (!probability_ok(p)) {
      throw InvalidConfig(std::string(what) + " must be in [0,1], got " + std::to_string(p));
    }
  };
  prob("p_open_idle", p_open_idle);
  prob("p_open_busy", p_open_busy);
  prob("p_open_done", p_open_done);
  prob("p_announce", p_announce);
  prob("p_blind_open", p_blind_open);
  if (laziness_override) prob("laziness", *laziness_override);
  if (!(task_mean_s > 0.0) || !(task_sd_s >= 0.0)) {
    throw InvalidConfig("human task duration needs mean > 0 and sd >= 0");
  }
  if (!(feedback_gap_mean_s > 0.0) || !(feedback_gap_sd_s >= 0.0)) {
    throw InvalidConfig("feedback gap needs mean > 0 and sd >= 0");
  }
  if (check_period_s <= 0 || blind_period_s <= 0) {
    throw InvalidConfig("check periods must be positive");
  }
  if (door_trip_s < 0) throw InvalidConfig("door_trip_s must be >= 0");
}

HumanState init_human(const HumanConfig& config, Rng& rng) {
  config.validate();
  HumanState s;
  s.task_remaining_s = truncated_normal(config.task_mean_s, config.task_sd_s,
                                        0.25 * config.task_mean_s, rng);
  s.next_check = config.mode == Mode::kNoComm ? config.blind_period_s : config.check_period_s;
  s.next_feedback = draw_gap(config, rng);
  return s;
}

double open_probability(const HumanConfig& config, const HumanState& state, int waiting_robots,
                        std::int64_t now) {
  if (waiting_robots <= 0) return 0.0;
  const double p = per_robot_probability(config, state, now);
  return 1.0 - std::pow(1.0 - p, waiting_robots);
}

std::vector<HumanAction> act_human(HumanState& state, const HumanConfig& config,
                                   int waiting_robots, std::int64_t now, Rng& rng) {
  std::vector<HumanAction> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  if (config.mode == Mode::kFeedback && !state.done && now >= state.next_feedback) {
    std::int64_t resume = now;
    if (unit(rng) < config.p_announce) {
      const FeedbackKind kind = unit(rng) < 0.5 ? FeedbackKind::kBusy2 : FeedbackKind::kBusy4;
      out.push_back({HumanActionKind::kFeedback, kind});
      ++state.feedback_sent;
      resume = now + (kind == FeedbackKind::kBusy2 ? kBusy2Seconds : kBusy4Seconds);
      state.busy_until = resume;
    }
    state.next_feedback = resume + draw_gap(config, rng);
  }

  if (config.mode == Mode::kNoComm) {
    if (now >= state.next_check) {
      state.next_check += config.blind_period_s;
      if (now >= state.trip_until && unit(rng) < config.p_blind_open) {
        out.push_back({HumanActionKind::kOpenDoor, {}});
      }
    }
  } else if (now >= state.next_check) {
    state.next_check += config.check_period_s;
    if (now >= state.trip_until && waiting_robots > 0) {
      const double p = per_robot_probability(config, state, now);
      bool open = false;
      for (int k = 0; k < waiting_robots; ++k) open = (unit(rng) < p) || open;
      if (open) out.push_back({HumanActionKind::kOpenDoor, {}});
    }
  }

  for (const auto& a : out) {
    if (a.kind != HumanActionKind::kOpenDoor) continue;
    ++state.door_openings;
    state.trip_until = now + config.door_trip_s;
  }

  if (!state.done && now >= state.trip_until) {
    state.task_remaining_s -= 1.0;
    if (state.task_remaining_s <= 0.0) {
      state.done = true;
      state.finished_at = static_cast<double>(now) + 1.0 + state.task_remaining_s;
      state.task_remaining_s = 0.0;
    }
  }
  return out;
}

double projected_finish(const HumanState& state, std::int64_t now) {
  if (state.done) return *state.finished_at;
  return static_cast<double>(std::max(now, state.trip_until)) + state.task_remaining_s;
}

}  // namespace arn
