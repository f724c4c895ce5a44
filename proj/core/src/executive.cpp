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

#include "arn/executive.hpp"

#include <algorithm>
#include <cmath>

#include "arn/errors.hpp"

namespace arn {

const char* message_source_name(MessageSource s) {
  return s == MessageSource::kHumanModel ? "human_model" : "gateway";
}

void TrialConfig::validate() const {
  if (n_robots < 1) throw InvalidConfig("n_robots must be >= 1");
  if (objects_per_robot < 0) throw InvalidConfig("objects_per_robot must be >= 0");
  if (max_sim_seconds < 1) throw InvalidConfig("max_sim_seconds must be >= 1");
  if (short_threshold_s < 0) throw InvalidConfig("short_threshold_s must be >= 0");
  human.validate();
}

Inbox::Receipt Inbox::push(Command c) {
  std::lock_guard<std::mutex> lock(mu_);
  c.seq = next_seq_++;
  c.enqueued_tick = tick_.load();
  queue_.push_back(c);
  return {c.seq, c.enqueued_tick};
}

std::vector<Command> Inbox::drain() {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<Command> out;
  out.swap(queue_);
  return out;
}

std::size_t Inbox::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return queue_.size();
}

TrialSetup build_trial(const WorldMap& map, int n_robots, int objects_per_robot,
                       int short_threshold_s) {
  if (n_robots < 1) throw InvalidConfig("n_robots must be >= 1");
  std::vector<const Station*> loading;
  for (const Station& st : map.stations()) {
    if (st.id != map.base_station().id) loading.push_back(&st);
  }
  if (loading.empty()) throw InvalidConfig("map has no loading station besides the base");

  TrialSetup setup;
  const int s = static_cast<int>(loading.size());
  for (int r = 0; r < n_robots; ++r) {
    const Station& start = *loading[r % s];
    RobotRuntime rr;
    rr.id = r;
    rr.pose = {start.cell.x, start.cell.y, std::nullopt};
    rr.symbolic = initial_state(map, start.cell);
    rr.symbolic.object_at.clear();
    for (int k = 0; k < objects_per_robot; ++k) {
      const std::string obj = "O" + std::to_string(r * objects_per_robot + k + 1);
      rr.symbolic.object_at[obj] = ObjectPlace::at(loading[(r + k) % s]->id);
      rr.goal.objects.insert(obj);
    }
    const TaskClasses mine =
        classify_tasks(rr.goal, {rr.symbolic}, map, short_threshold_s);
    setup.classes.insert(mine.begin(), mine.end());
    setup.robots.push_back(std::move(rr));
  }
  return setup;
}

Executive::Executive(const WorldMap& map, TrialConfig config)
    : Executive(map, config,
                (config.validate(), build_trial(map, config.n_robots, config.objects_per_robot,
                                                config.short_threshold_s))) {}

Executive::Executive(const WorldMap& map, TrialConfig config, TrialSetup setup)
    : map_(&map),
      config_(std::move(config)),
      rng_(config_.seed),
      classes_(std::move(setup.classes)),
      sim_(map, std::move(setup.robots), SimOptions{config_.scripted_always_open}) {
  if (!config_.live) human_ = init_human(config_.human, rng_);
}

void Executive::start() {
  if (started_) return;
  started_ = true;
  replan("initial");
}

void Executive::emit(SimEvent e) {
  if (sink_) sink_(e);
  if (config_.keep_events) events_.push_back(std::move(e));
}

void Executive::emit_all(std::vector<SimEvent> events) {
  for (auto& e : events) emit(std::move(e));
}

std::string Executive::door_for_human(const std::string& requested) const {
  if (!requested.empty()) return map_->door(requested).id;
  std::string best;
  int best_waiting = -1;
  for (const Door& d : map_->doors()) {
    if (d.kind != DoorKind::kHumanOperated) continue;
    int waiting = 0;
    for (const auto& r : sim_.robots()) {
      if (r.current && r.phase == ActionPhase::kAwaitingDoor && r.current->target == d.id) {
        ++waiting;
      }
    }
    if (waiting > best_waiting) {
      best = d.id;
      best_waiting = waiting;
    }
  }
  return best;
}

void Executive::replan(const char* reason) {
  const std::int64_t now = sim_.now();
  const std::size_t n = sim_.robot_count();
  std::vector<SymbolicState> states(n);
  std::vector<GoalSpec> goals(n);
  std::vector<int> ready(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RobotRuntime& r = sim_.robot(static_cast<int>(i));
    states[i] = sim_.projected_state(static_cast<int>(i));
    if (!r.done()) goals[i] = effective_goals(r.goal, constraints_, classes_, now);
    ready[i] = static_cast<int>(now) + r.remaining();
  }
  TeamPlan team = plan_team(states, goals, *map_, static_cast<int>(now), ready);

  nlohmann::json detail;
  detail["reason"] = reason;
  detail["constraints"] = nlohmann::json::array();
  for (const auto& c : constraints_.list()) {
    detail["constraints"].push_back({{"deferred", task_class_name(c.deferred)},
                                     {"expires_at", c.expires_at}});
  }
  detail["goals"] = nlohmann::json::array();
  for (const auto& g : goals) detail["goals"].push_back(g.objects);
  detail["unsolved"] = team.unsolved;
  detail["queue_order"] = team.queue_order;

  for (std::size_t i = 0; i < n; ++i) {
    sim_.replace_plan(static_cast<int>(i), std::move(team.plans[i]));
  }
  active_goals_ = std::move(goals);
  if (std::string_view(reason) != "initial") ++replans_;
  emit({now, EventType::kReplan, -1, "", std::move(detail)});
}

LoopOutcome Executive::step() {
  if (outcome_ != LoopOutcome::kRunning) return outcome_;
  start();
  const std::int64_t now = sim_.now();
  inbox_.set_tick(now);

  if (!config_.live) {
    const bool was_done = human_.done;
    for (const HumanAction& a :
         act_human(human_, config_.human, sim_.waiting_for_human(), now, rng_)) {
      Command c;
      c.kind = a.kind == HumanActionKind::kOpenDoor ? Command::Kind::kOpenDoor
                                                    : Command::Kind::kFeedback;
      c.feedback = a.feedback;
      c.source = MessageSource::kHumanModel;
      inbox_.push(c);
    }
    if (!was_done && human_.done) {
      emit({now, EventType::kHumanDone, -1, "", {{"finished_at", *human_.finished_at}}});
    }
  }

  std::vector<FeedbackEvent> feedback;
  for (const Command& c : inbox_.drain()) {
    if (c.kind == Command::Kind::kOpenDoor) {
      const std::string door = door_for_human(c.door);
      if (door.empty()) continue;
      auto events = sim_.open_door(door, message_source_name(c.source));
      events.front().detail["seq"] = c.seq;
      emit_all(std::move(events));
      ++door_openings_;
      continue;
    }
    nlohmann::json detail{{"kind", feedback_kind_name(c.feedback)},
                          {"source", message_source_name(c.source)},
                          {"seq", c.seq}};
    if (c.issued_at_ms) detail["issued_at_ms"] = *c.issued_at_ms;
    if (config_.mode() != Mode::kFeedback) {
      detail["ignored"] = true;
    } else {
      feedback.push_back({c.feedback, now});
      ++feedback_events_;
    }
    emit({now, EventType::kFeedback, -1, "", std::move(detail)});
  }

  ConstraintSet next = convert(constraints_, std::nullopt, now);
  for (const auto& f : feedback) next = convert(next, f, now);
  if (!(next == constraints_)) {
    constraints_ = std::move(next);
    replan(feedback.empty() ? "expiry" : "feedback");
  }

  emit_all(sim_.tick());
  inbox_.set_tick(sim_.now());

  if (sim_.all_done()) {
    finish(LoopOutcome::kDone);
  } else if (sim_.now() >= config_.max_sim_seconds) {
    finish(LoopOutcome::kTimedOut);
  }
  return outcome_;
}

LoopOutcome Executive::run() {
  while (step() == LoopOutcome::kRunning) {
  }
  return outcome_;
}

void Executive::finish(LoopOutcome outcome) {
  outcome_ = outcome;
  t_h_ = config_.live ? 0.0 : projected_finish(human_, sim_.now());
  if (outcome == LoopOutcome::kTimedOut) {
    emit({sim_.now(), EventType::kTimeout, -1, "", nlohmann::json::object()});
  }
}

TrialMetrics Executive::metrics() const {
  TrialMetrics m;
  const double limit = static_cast<double>(config_.max_sim_seconds);
  for (const auto& r : sim_.robots()) {
    m.t_r.push_back(r.done() ? static_cast<double>(*r.done_at) : limit);
  }
  m.t_h = t_h_ ? *t_h_ : (config_.live ? 0.0 : projected_finish(human_, sim_.now()));
  m.t_r_last = m.t_r.empty() ? 0.0 : *std::max_element(m.t_r.begin(), m.t_r.end());
  m.t_all = m.t_h;
  for (double t : m.t_r) m.t_all += t;
  m.team_time = std::max(m.t_h, m.t_r_last);
  m.door_openings = door_openings_;
  m.replans = replans_;
  m.feedback_events = feedback_events_;
  m.timed_out = outcome_ == LoopOutcome::kTimedOut;
  return m;
}

TrialMetrics run_trial(const WorldMap& map, const TrialConfig& config,
                       std::vector<SimEvent>* log) {
  Executive ex(map, config);
  if (log != nullptr) ex.set_event_sink([log](const SimEvent& e) { log->push_back(e); });
  ex.run();
  return ex.metrics();
}

}  // namespace arn
