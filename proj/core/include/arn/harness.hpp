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

#ifndef ARN_HARNESS_HPP_
#define ARN_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arn/executive.hpp"
#include "arn/stats.hpp"

namespace arn {

// Reads a trial config object. Unknown keys are rejected. Relative "map"
// paths resolve against `base_dir`. Throws InvalidConfig.
TrialConfig trial_config_from_json(const nlohmann::json& j,
                                   const std::filesystem::path& base_dir = {});
nlohmann::json trial_config_to_json(const TrialConfig& c);
TrialConfig load_trial_config(const std::filesystem::path& path);

nlohmann::json metrics_to_json(const TrialMetrics& m);

enum class VaryKind : std::uint8_t { kMode, kNRobots, kLaziness };

struct SweepSpec {
  TrialConfig base;
  VaryKind vary = VaryKind::kMode;
  // Every cell is crossed with these modes (all three when empty).
  std::vector<Mode> modes;
  std::vector<int> n_robots;
  std::vector<double> laziness;
  int trials_per_cell = 100;
  std::uint64_t seed_base = 1;

  // Throws InvalidConfig.
  void validate() const;
};

SweepSpec sweep_spec_from_json(const nlohmann::json& j,
                               const std::filesystem::path& base_dir = {});
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct CellKey {
  Mode mode = Mode::kFeedback;
  int n_robots = 3;
  std::optional<double> laziness;

  std::string label() const;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct TrialRow {
  CellKey cell;
  int trial = 0;
  std::uint64_t seed = 0;
  TrialMetrics metrics;
};

struct CellSummary {
  CellKey cell;
  std::size_t n = 0;
  Summary t_h, t_r_mean, t_all, t_r_last, team_time, door_openings, replans;
};

struct SweepResult {
  std::vector<CellKey> cells;
  std::vector<TrialRow> rows;  // cell-major, trial order
  std::vector<CellSummary> summaries;

  std::vector<double> column(const CellKey& cell, double (*pick)(const TrialMetrics&)) const;
};

std::vector<CellKey> expand_cells(const SweepSpec& spec);
CellSummary summarize_cell(const CellKey& cell, const std::vector<TrialRow>& rows);

// Runs every cell x trial on `threads` workers (0: hardware concurrency).
// Trial i of every cell uses seed seed_base + i. Results do not depend on
// the thread count. Trial errors are rethrown naming the cell and seed.
SweepResult run_sweep(const WorldMap& map, const SweepSpec& spec, int threads = 0);

void write_trials_csv(std::ostream& out, const SweepResult& result);
nlohmann::json summary_json(const SweepSpec& spec, const SweepResult& result);
// trials.csv and summary.json under `dir` (created if missing).
void write_sweep_outputs(const std::filesystem::path& dir, const SweepSpec& spec,
                         const SweepResult& result);

}  // namespace arn

#endif  // ARN_HARNESS_HPP_
