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

#include "arn/restrictor.hpp"

#include <algorithm>
#include <limits>

#include "arn/errors.hpp"

namespace arn {

const char* feedback_kind_name(FeedbackKind kind) {
  return kind == FeedbackKind::kBusy2 ? "busy2" : "busy4";
}

std::optional<FeedbackKind> parse_feedback_kind(std::string_view name) {
  if (name == "busy2") return FeedbackKind::kBusy2;
  if (name == "busy4") return FeedbackKind::kBusy4;
  return std::nullopt;
}

const char* task_class_name(TaskClass c) { return c == TaskClass::kShort ? "short" : "long"; }

std::optional<std::int64_t> ConstraintSet::expiry(TaskClass cls) const {
  auto it = active_.find(cls);
  if (it == active_.end()) return std::nullopt;
  return it->second;
}

bool ConstraintSet::defers(TaskClass cls, std::int64_t now) const {
  auto it = active_.find(cls);
  return it != active_.end() && it->second > now;
}

std::vector<TimedConstraint> ConstraintSet::list() const {
  std::vector<TimedConstraint> out;
  out.reserve(active_.size());
  for (const auto& [cls, exp] : active_) out.push_back({cls, exp});
  return out;
}

ConstraintSet convert(const ConstraintSet& prev, const std::optional<FeedbackEvent>& feedback,
                      std::int64_t now) {
  ConstraintSet next;
  for (const auto& c : prev.list()) {
    if (c.expires_at > now) next.set(c);
  }
  if (feedback) {
    // A busy4 signal means the human will be away for a while: short tasks
    // wait. busy2 means the door will be free soon: long tasks wait.
    if (feedback->kind == FeedbackKind::kBusy4) {
      next.set({TaskClass::kShort, feedback->issued_at + kBusy4Seconds});
    } else {
      next.set({TaskClass::kLong, feedback->issued_at + kBusy2Seconds});
    }
  }
  return next;
}

GoalSpec effective_goals(const GoalSpec& goal, const ConstraintSet& constraints,
                         const TaskClasses& classes, std::int64_t now) {
  GoalSpec out;
  out.robot_in = goal.robot_in;
  for (const auto& obj : goal.objects) {
    auto it = classes.find(obj);
    if (it == classes.end()) throw UnclassifiedObject("object '" + obj + "' has no task class");
    if (!constraints.defers(it->second, now)) out.objects.insert(obj);
  }
  return out;
}

TaskClasses classify_tasks(const GoalSpec& goal, const std::vector<SymbolicState>& states,
                           const WorldMap& map, int threshold_s) {
  TaskClasses out;
  for (const auto& obj : goal.objects) {
    int best = std::numeric_limits<int>::max();
    GoalSpec single;
    single.objects.insert(obj);
    for (const auto& s : states) {
      if (!s.object_at.count(obj)) continue;
      try {
        best = std::min(best, plan(s, single, map).total_duration());
      } catch (const Unsolvable&) {
      }
    }
    out[obj] = best < threshold_s ? TaskClass::kShort : TaskClass::kLong;
  }
  return out;
}

}  // namespace arn
