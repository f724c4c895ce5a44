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

#ifndef ARN_RESTRICTOR_HPP_
#define ARN_RESTRICTOR_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arn/task_planner.hpp"
#include "arn/world.hpp"

namespace arn {

// The feedback library: the two busy buttons offered to the human.
enum class FeedbackKind : std::uint8_t { kBusy2, kBusy4 };

const char* feedback_kind_name(FeedbackKind kind);  // "busy2" / "busy4"
std::optional<FeedbackKind> parse_feedback_kind(std::string_view name);

struct FeedbackEvent {
  FeedbackKind kind = FeedbackKind::kBusy4;
  std::int64_t issued_at = 0;  // sim seconds
};

enum class TaskClass : std::uint8_t { kShort, kLong };

const char* task_class_name(TaskClass c);  // "short" / "long"

struct TimedConstraint {
  TaskClass deferred = TaskClass::kShort;
  std::int64_t expires_at = 0;
  friend bool operator==(const TimedConstraint&, const TimedConstraint&) = default;
};

// Activated constraints; at most one per deferred class.
class ConstraintSet {
 public:
  bool empty() const { return active_.empty(); }
  std::size_t size() const { return active_.size(); }

  // Inserts or replaces the constraint for c.deferred.
  void set(const TimedConstraint& c) { active_[c.deferred] = c.expires_at; }
  std::optional<std::int64_t> expiry(TaskClass cls) const;
  bool defers(TaskClass cls, std::int64_t now) const;
  // Ordered by class.
  std::vector<TimedConstraint> list() const;

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;

 private:
  std::map<TaskClass, std::int64_t> active_;
};

inline constexpr int kBusy2Seconds = 120;
inline constexpr int kBusy4Seconds = 240;
inline constexpr int kShortTaskThresholdSeconds = 150;

// Drops constraints expiring at or before `now`, then folds in `feedback`:
// busy4 defers short tasks for 240 s, busy2 defers long tasks for 120 s.
ConstraintSet convert(const ConstraintSet& prev, const std::optional<FeedbackEvent>& feedback,
                      std::int64_t now);

using TaskClasses = std::map<std::string, TaskClass>;

// `goal` minus objects whose class is deferred at `now`. Throws
// UnclassifiedObject when a goal object has no class.
GoalSpec effective_goals(const GoalSpec& goal, const ConstraintSet& constraints,
                         const TaskClasses& classes, std::int64_t now);

// Short when the cheapest single-robot delivery over `states` is below
// `threshold_s`; unreachable objects count as long.
TaskClasses classify_tasks(const GoalSpec& goal, const std::vector<SymbolicState>& states,
                           const WorldMap& map,
                           int threshold_s = kShortTaskThresholdSeconds);

}  // namespace arn

#endif  // ARN_RESTRICTOR_HPP_
