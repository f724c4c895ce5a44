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

#include "support/checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace arn::testing {
namespace {

using Goals = std::vector<std::set<std::string>>;

Goals goals_of(const SimEvent& e) {
  Goals g;
  for (const auto& row : e.detail.at("goals")) g.push_back(row.get<std::set<std::string>>());
  return g;
}

}  // namespace

std::string LogAudit::summary() const {
  std::ostringstream out;
  out << "feedbacks=" << feedbacks << " busy4=" << busy4 << " replans=" << replans
      << " expected=" << expected_replans;
  for (std::size_t i = 0; i < problems.size() && i < 5; ++i) out << "\n  " << problems[i];
  return out.str();
}

LogAudit audit_constraint_log(const std::vector<SimEvent>& events, const TaskClasses& classes) {
  LogAudit audit;
  auto problem = [&](std::int64_t t, const std::string& what) {
    audit.problems.push_back("t=" + std::to_string(t) + ": " + what);
  };

  Goals full;
  std::map<std::int64_t, std::vector<FeedbackEvent>> feedback_at;
  std::map<std::int64_t, std::vector<const SimEvent*>> replans_at;
  std::int64_t last_t = 0;
  for (const auto& e : events) {
    last_t = std::max(last_t, e.t);
    if (e.type == EventType::kReplan) {
      if (e.detail.value("reason", "") == "initial") {
        full = goals_of(e);
      } else {
        replans_at[e.t].push_back(&e);
        ++audit.replans;
      }
    } else if (e.type == EventType::kFeedback && !e.detail.value("ignored", false)) {
      auto kind = parse_feedback_kind(e.detail.value("kind", ""));
      if (!kind) {
        problem(e.t, "feedback event without a kind");
        continue;
      }
      feedback_at[e.t].push_back({*kind, e.t});
      ++audit.feedbacks;
      if (*kind == FeedbackKind::kBusy4) ++audit.busy4;
    }
  }

  // Rebuild the constraint set for every tick and note where it changes.
  std::map<std::int64_t, ConstraintSet> change_at;
  ConstraintSet cs;
  for (std::int64_t t = 0; t <= last_t; ++t) {
    ConstraintSet next = convert(cs, std::nullopt, t);
    if (auto it = feedback_at.find(t); it != feedback_at.end()) {
      for (const auto& f : it->second) next = convert(next, f, t);
    }
    if (!(next == cs)) change_at[t] = next;
    cs = std::move(next);
  }
  audit.expected_replans = static_cast<int>(change_at.size());

  for (const auto& [t, evs] : replans_at) {
    if (evs.size() != 1) problem(t, std::to_string(evs.size()) + " replans in one tick");
    if (!change_at.count(t)) problem(t, "replan without a constraint change");
  }
  for (const auto& [t, set] : change_at) {
    if (!replans_at.count(t)) problem(t, "constraint change without a replan");
  }

  // Goals of each replan against the rebuilt set. A robot counts as done
  // once its RobotDone event has appeared earlier in the log.
  std::set<int> done;
  for (const auto& e : events) {
    if (e.type == EventType::kRobotDone) done.insert(e.robot);
    if (e.type != EventType::kReplan || e.detail.value("reason", "") == "initial") continue;
    auto it = change_at.find(e.t);
    if (it == change_at.end()) continue;
    const ConstraintSet& active = it->second;
    const Goals got = goals_of(e);
    if (got.size() != full.size()) {
      problem(e.t, "goal list size changed");
      continue;
    }
    for (std::size_t i = 0; i < full.size(); ++i) {
      if (done.count(static_cast<int>(i))) continue;
      GoalSpec want = effective_goals({full[i], {}}, active, classes, e.t);
      if (got[i] != want.objects) problem(e.t, "robot " + std::to_string(i) + " goals differ");
      if (active.defers(TaskClass::kShort, e.t)) {
        for (const auto& o : got[i]) {
          if (classes.at(o) == TaskClass::kShort) {
            problem(e.t, "short object " + o + " planned during a busy4 deferral");
          }
        }
      }
    }
    // A lapse of the short deferral restores every short object.
    auto before = change_at.lower_bound(e.t);
    ConstraintSet prev;
    if (before != change_at.begin()) prev = std::prev(before)->second;
    if (prev.defers(TaskClass::kShort, e.t - 1) && !active.defers(TaskClass::kShort, e.t)) {
      if (*prev.expiry(TaskClass::kShort) != e.t) problem(e.t, "short deferral lapsed late");
      for (std::size_t i = 0; i < full.size(); ++i) {
        if (done.count(static_cast<int>(i))) continue;
        for (const auto& o : full[i]) {
          if (classes.at(o) == TaskClass::kShort && !got[i].count(o) &&
              !active.defers(TaskClass::kShort, e.t)) {
            problem(e.t, "short object " + o + " not restored");
          }
        }
      }
    }
  }
  return audit;
}

std::vector<std::string> check_metric_identities(const TrialMetrics& m) {
  std::vector<std::string> out;
  double sum = m.t_h;
  double last = 0.0;
  for (double t : m.t_r) {
    sum += t;
    last = std::max(last, t);
  }
  if (std::abs(m.t_all - sum) > 1e-9) out.push_back("t_all != t_h + sum(t_r)");
  if (std::abs(m.t_r_last - last) > 1e-9) out.push_back("t_r_last != max(t_r)");
  if (std::abs(m.team_time - std::max(m.t_h, m.t_r_last)) > 1e-9) {
    out.push_back("team_time != max(t_h, t_r_last)");
  }
  if (m.door_openings < 0 || m.replans < 0 || m.feedback_events < 0) out.push_back("negative count");
  return out;
}

std::string serialize_log(const std::vector<SimEvent>& events) {
  std::ostringstream out;
  for (const auto& e : events) write_event_line(out, e);
  return out.str();
}

}  // namespace arn::testing
