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

// Acceptance run. Prints one PASS/FAIL line per criterion, with indented
// detail lines under it, and exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "arn/executive.hpp"
#include "arn/harness.hpp"
#include "arn/stats.hpp"
#include "arn/task_planner.hpp"
#include "support/checks.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace arn {
namespace {

// Pinned tolerances and budgets.
constexpr double kGoldenBudgetMs = 1.0;
constexpr double kOracleBudgetS = 5.0;
constexpr std::size_t kMinOracleScenarios = 10;
constexpr int kTrials = 100;
constexpr double kModeAlpha = 0.01;
constexpr double kModeBudgetS = 120.0;
constexpr double kDoorMargin = 0.05;    // relative gap that counts as ordered
constexpr double kTieAlpha = 0.05;      // Mann-Whitney p at or above this is a tie
constexpr double kDoorBudgetS = 600.0;
constexpr double kLazinessClaimFrom = 0.1;
constexpr int kCalibrationChecks = 100000;
constexpr double kCalibrationTolerance = 0.01;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Report {
  int failed = 0;
  void verdict(bool ok, const std::string& name, const std::string& summary) {
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), summary.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void detail(const std::string& line) { std::printf("  %s\n", line.c_str()); }

double pick_t_all(const TrialMetrics& m) { return m.t_all; }
double pick_team(const TrialMetrics& m) { return m.team_time; }
double pick_doors(const TrialMetrics& m) { return m.door_openings; }

double mean(const std::vector<double>& xs) { return summarize(xs).mean; }

void golden(Report& r) {
  const WorldMap m = testing::two_room_map();
  const SymbolicState s = initial_state(m, {1, 1});
  const auto t0 = Clock::now();
  const Plan p = plan(s, GoalSpec{{}, "R2"}, m);
  const double ms = seconds_since(t0) * 1e3;
  const std::string got = dump_plan(p);
  const bool exact = got == "approach(d,0).\nopendoor(d,1).\ngothrough(d,2).\n";
  r.verdict(exact && ms < kGoldenBudgetMs, "planner_golden",
            fmt("exact=%s time=%.3f ms (budget %.1f ms)", exact ? "yes" : "no", ms,
                kGoldenBudgetMs));
  if (!exact) detail("got: " + got);
}

void oracle(Report& r) {
  const auto scenarios = testing::planner_scenarios();
  int mismatches = 0;
  const auto t0 = Clock::now();
  for (const auto& sc : scenarios) {
    const auto want = testing::uniform_cost_oracle(sc.state, sc.goal, *sc.map);
    const int got = plan(sc.state, sc.goal, *sc.map).total_duration();
    if (!want || *want != got) {
      ++mismatches;
      detail(fmt("%s: planner %d, oracle %d", sc.name.c_str(), got, want ? *want : -1));
    }
  }
  const double s = seconds_since(t0);
  r.verdict(mismatches == 0 && scenarios.size() >= kMinOracleScenarios && s < kOracleBudgetS,
            "planner_oracle_equivalence",
            fmt("%zu scenarios, %d mismatches, %.2f s (budget %.0f s)", scenarios.size(),
                mismatches, s, kOracleBudgetS));
}

SweepSpec base_spec(VaryKind vary, std::uint64_t seed_base) {
  SweepSpec s;
  s.vary = vary;
  s.trials_per_cell = kTrials;
  s.seed_base = seed_base;
  return s;
}

void mode_comparison(Report& r, const WorldMap& map) {
  SweepSpec spec = base_spec(VaryKind::kMode, 1000);
  spec.modes = {Mode::kFeedback, Mode::kNoFeedback};
  const auto t0 = Clock::now();
  const SweepResult res = run_sweep(map, spec);
  const double s = seconds_since(t0);
  const auto fb = res.column({Mode::kFeedback, 3, std::nullopt}, pick_t_all);
  const auto nf = res.column({Mode::kNoFeedback, 3, std::nullopt}, pick_t_all);
  const Comparison c = compare(fb, nf);
  const bool ok = mean(fb) < mean(nf) && c.p_value < kModeAlpha && s < kModeBudgetS;
  r.verdict(ok, "mode_comparison_t_all",
            fmt("mean T_all feedback %.1f s vs nofeedback %.1f s, Mann-Whitney p=%.3g "
                "(need lower and p<%.2f), %.1f s",
                mean(fb), mean(nf), c.p_value, kModeAlpha, s));
  detail(fmt("sd feedback %.1f, nofeedback %.1f; Welch t=%.2f p=%.3g",
             summarize(fb).sd, summarize(nf).sd, c.welch_t, c.welch_p));
  for (auto [name, pick] : {std::pair{"team_time", pick_team}, {"door_openings", pick_doors}}) {
    const auto a = res.column({Mode::kFeedback, 3, std::nullopt}, pick);
    const auto b = res.column({Mode::kNoFeedback, 3, std::nullopt}, pick);
    detail(fmt("%s: feedback %.2f vs nofeedback %.2f, p=%.3g", name, mean(a), mean(b),
               compare(a, b).p_value));
  }
}

// "ordered": lo <= hi by at least the margin; "tie": not significantly
// different; otherwise the pair fails.
std::string order_verdict(const std::vector<double>& lo, const std::vector<double>& hi,
                          bool* ok) {
  const double a = mean(lo), b = mean(hi);
  const double p = compare(lo, hi).p_value;
  if (a <= b && b > 0 && (b - a) >= kDoorMargin * b) return fmt("ordered (%.2f < %.2f)", a, b);
  if (p >= kTieAlpha) return fmt("tie (%.2f vs %.2f, p=%.3g)", a, b, p);
  *ok = false;
  return fmt("VIOLATED (%.2f vs %.2f, p=%.3g)", a, b, p);
}

void door_ordering(Report& r, const WorldMap& map) {
  SweepSpec spec = base_spec(VaryKind::kNRobots, 2000);
  spec.n_robots = {1, 2, 3, 4, 5};
  const auto t0 = Clock::now();
  const SweepResult res = run_sweep(map, spec);
  const double s = seconds_since(t0);
  bool ok = s < kDoorBudgetS;
  std::vector<std::string> lines;
  for (int n : spec.n_robots) {
    const auto fb = res.column({Mode::kFeedback, n, std::nullopt}, pick_doors);
    const auto nf = res.column({Mode::kNoFeedback, n, std::nullopt}, pick_doors);
    const auto nc = res.column({Mode::kNoComm, n, std::nullopt}, pick_doors);
    lines.push_back(fmt("N=%d feedback<=nofeedback: ", n) + order_verdict(fb, nf, &ok) +
                    "; nofeedback<=nocomm: " + order_verdict(nf, nc, &ok));
  }
  r.verdict(ok, "door_opening_ordering",
            fmt("N=1..5, %d trials per cell, margin %.0f%%, tie when p>=%.2f, %.1f s", kTrials,
                kDoorMargin * 100, kTieAlpha, s));
  for (const auto& l : lines) detail(l);
}

void laziness(Report& r, const WorldMap& map) {
  SweepSpec spec = base_spec(VaryKind::kLaziness, 3000);
  spec.laziness = {0.05, 0.1, 0.2, 0.3, 0.45, 0.6, 0.9};
  const auto t0 = Clock::now();
  const SweepResult res = run_sweep(map, spec);
  const double s = seconds_since(t0);
  bool ok = true;
  std::vector<std::string> lines;
  for (double l : spec.laziness) {
    const auto fb = res.column({Mode::kFeedback, 3, l}, pick_team);
    const auto nf = res.column({Mode::kNoFeedback, 3, l}, pick_team);
    const auto nc = res.column({Mode::kNoComm, 3, l}, pick_team);
    const bool claimed = l >= kLazinessClaimFrom;
    const bool holds = mean(fb) <= mean(nf) && mean(fb) <= mean(nc);
    if (claimed && !holds) ok = false;
    lines.push_back(fmt("p_open=%.2f team_time feedback %.1f, nofeedback %.1f (p=%.3g), "
                        "nocomm %.1f (p=%.3g): %s",
                        l, mean(fb), mean(nf), compare(fb, nf).p_value, mean(nc),
                        compare(fb, nc).p_value,
                        !claimed ? "no claim" : holds ? "holds" : "VIOLATED"));
  }
  r.verdict(ok, "laziness_team_time",
            fmt("feedback mean team_time <= both baselines for p_open>=%.1f, %d trials per "
                "cell, %.1f s",
                kLazinessClaimFrom, kTrials, s));
  for (const auto& line : lines) detail(line);
}

void calibration(Report& r) {
  bool ok = true;
  std::string summary;
  const struct {
    testing::HumanRegime regime;
    const char* name;
    double target;
  } regimes[] = {{testing::HumanRegime::kIdle, "idle", 0.6},
                 {testing::HumanRegime::kBusy, "busy", 0.2},
                 {testing::HumanRegime::kDone, "done", 0.9}};
  for (const auto& g : regimes) {
    const double f = testing::measure_open_frequency(g.regime, kCalibrationChecks, 77);
    ok = ok && std::abs(f - g.target) <= kCalibrationTolerance;
    summary += fmt("%s %.4f (target %.1f) ", g.name, f, g.target);
  }
  r.verdict(ok, "human_open_calibration",
            summary + fmt("over %d checks each, tolerance %.2f", kCalibrationChecks,
                          kCalibrationTolerance));
}

void determinism(Report& r, const WorldMap& map) {
  int runs = 0, diverged = 0;
  for (Mode mode : {Mode::kFeedback, Mode::kNoFeedback, Mode::kNoComm}) {
    for (int n = 1; n <= 5; ++n) {
      for (std::uint64_t seed : {1u, 99u}) {
        TrialConfig c;
        c.human.mode = mode;
        c.n_robots = n;
        c.seed = seed;
        std::vector<SimEvent> a, b;
        const auto ma = metrics_to_json(run_trial(map, c, &a)).dump();
        const auto mb = metrics_to_json(run_trial(map, c, &b)).dump();
        ++runs;
        if (ma != mb || testing::serialize_log(a) != testing::serialize_log(b)) ++diverged;
      }
    }
  }
  SweepSpec spec = base_spec(VaryKind::kNRobots, 5);
  spec.n_robots = {2};
  spec.trials_per_cell = 5;
  std::ostringstream one, many;
  write_trials_csv(one, run_sweep(map, spec, 1));
  write_trials_csv(many, run_sweep(map, spec, 3));
  const bool sweep_same = one.str() == many.str();
  r.verdict(diverged == 0 && sweep_same, "determinism",
            fmt("%d trial pairs, %d diverged; sweep rows identical across thread counts: %s",
                runs, diverged, sweep_same ? "yes" : "no"));
}

void constraint_lifecycle(Report& r, const WorldMap& map) {
  int trials = 0, bad = 0, busy4 = 0, replans = 0;
  auto audit = [&](const std::vector<SimEvent>& log, const TaskClasses& classes) {
    const auto a = testing::audit_constraint_log(log, classes);
    ++trials;
    busy4 += a.busy4;
    replans += a.replans;
    if (!a.ok()) {
      ++bad;
      if (bad <= 3) detail(a.summary());
    }
  };
  // Feedback from the simulated human.
  for (int i = 0; i < kTrials; ++i) {
    TrialConfig c;
    c.seed = 4000 + static_cast<std::uint64_t>(i);
    std::vector<SimEvent> log;
    run_trial(map, c, &log);
    audit(log, build_trial(map, c.n_robots, c.objects_per_robot).classes);
  }
  // Busy presses injected at fixed times, including overlapping windows.
  for (const auto& times : std::vector<std::vector<int>>{{0}, {30}, {30, 100}, {200, 200, 439},
                                                         {5, 250, 480}}) {
    TrialConfig c;
    c.live = true;
    c.scripted_always_open = true;
    c.keep_events = true;
    Executive ex(map, c);
    std::size_t next = 0;
    while (ex.outcome() == LoopOutcome::kRunning) {
      while (next < times.size() && times[next] == ex.sim().now()) {
        Command cmd;
        cmd.kind = Command::Kind::kFeedback;
        cmd.feedback = FeedbackKind::kBusy4;
        cmd.source = MessageSource::kGateway;
        ex.inbox().push(cmd);
        ++next;
      }
      ex.step();
    }
    audit(ex.events(), ex.classes());
  }
  r.verdict(bad == 0 && busy4 > 0, "constraint_lifecycle",
            fmt("%d trials audited, %d with violations; %d busy4 presses, %d replans", trials,
                bad, busy4, replans));
}

}  // namespace
}  // namespace arn

int main() {
  using namespace arn;
  const WorldMap& map = testing::office3();
  Report r;
  golden(r);
  oracle(r);
  mode_comparison(r, map);
  door_ordering(r, map);
  laziness(r, map);
  calibration(r);
  determinism(r, map);
  constraint_lifecycle(r, map);
  std::printf("%d criteria failed\n", r.failed);
  return r.failed == 0 ? 0 : 1;
}
