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

#include "arn/harness.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "arn/errors.hpp"

namespace arn {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void reject_unknown(const json& j, const std::set<std::string>& known, const char* what) {
  if (!j.is_object()) throw InvalidConfig(std::string(what) + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw InvalidConfig(std::string("unknown key '") + k + "' in " + what);
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("bad value for '") + key + "': " + e.what());
  }
}

Mode mode_from(const json& j) {
  if (!j.is_string()) throw InvalidConfig("mode must be a string, got " + j.dump());
  auto m = parse_mode(j.get<std::string>());
  if (!m) throw InvalidConfig("unknown mode " + j.dump());
  return *m;
}

HumanConfig human_from_json(const json& j) {
  reject_unknown(j,
                 {"task_mean_s", "task_sd_s", "check_period_s", "p_open_idle", "p_open_busy",
                  "p_open_done", "p_announce", "feedback_gap_mean_s", "feedback_gap_sd_s",
                  "blind_period_s", "p_blind_open", "door_trip_s", "laziness"},
                 "human");
  HumanConfig h;
  read(j, "task_mean_s", h.task_mean_s);
  read(j, "task_sd_s", h.task_sd_s);
  read(j, "check_period_s", h.check_period_s);
  read(j, "p_open_idle", h.p_open_idle);
  read(j, "p_open_busy", h.p_open_busy);
  read(j, "p_open_done", h.p_open_done);
  read(j, "p_announce", h.p_announce);
  read(j, "feedback_gap_mean_s", h.feedback_gap_mean_s);
  read(j, "feedback_gap_sd_s", h.feedback_gap_sd_s);
  read(j, "blind_period_s", h.blind_period_s);
  read(j, "p_blind_open", h.p_blind_open);
  read(j, "door_trip_s", h.door_trip_s);
  if (j.contains("laziness") && !j["laziness"].is_null()) {
    double l = 0.0;
    read(j, "laziness", l);
    h.laziness_override = l;
  }
  return h;
}

json human_to_json(const HumanConfig& h) {
  json j{{"task_mean_s", h.task_mean_s},
         {"task_sd_s", h.task_sd_s},
         {"check_period_s", h.check_period_s},
         {"p_open_idle", h.p_open_idle},
         {"p_open_busy", h.p_open_busy},
         {"p_open_done", h.p_open_done},
         {"p_announce", h.p_announce},
         {"feedback_gap_mean_s", h.feedback_gap_mean_s},
         {"feedback_gap_sd_s", h.feedback_gap_sd_s},
         {"blind_period_s", h.blind_period_s},
         {"p_blind_open", h.p_blind_open},
         {"door_trip_s", h.door_trip_s}};
  if (h.laziness_override) j["laziness"] = *h.laziness_override;
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw InvalidConfig(path.string() + " is not valid JSON");
  return j;
}

json summary_to_json(const Summary& s) {
  return {{"n", s.n}, {"mean", s.mean}, {"sd", s.sd}, {"min", s.min}, {"max", s.max}};
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

TrialConfig trial_config_from_json(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown(j,
                 {"map", "n_robots", "objects_per_robot", "mode", "seed", "max_sim_seconds",
                  "short_threshold_s", "human"},
                 "trial config");
  TrialConfig c;
  if (j.contains("map")) {
    std::filesystem::path p = j["map"].get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    c.map_path = p.lexically_normal().string();
  }
  read(j, "n_robots", c.n_robots);
  read(j, "objects_per_robot", c.objects_per_robot);
  read(j, "seed", c.seed);
  read(j, "max_sim_seconds", c.max_sim_seconds);
  read(j, "short_threshold_s", c.short_threshold_s);
  if (j.contains("human")) c.human = human_from_json(j["human"]);
  if (j.contains("mode")) c.human.mode = mode_from(j["mode"]);
  c.validate();
  return c;
}

json trial_config_to_json(const TrialConfig& c) {
  return {{"map", c.map_path},
          {"n_robots", c.n_robots},
          {"objects_per_robot", c.objects_per_robot},
          {"mode", mode_name(c.mode())},
          {"seed", c.seed},
          {"max_sim_seconds", c.max_sim_seconds},
          {"short_threshold_s", c.short_threshold_s},
          {"human", human_to_json(c.human)}};
}

TrialConfig load_trial_config(const std::filesystem::path& path) {
  return trial_config_from_json(read_json_file(path), path.parent_path());
}

json metrics_to_json(const TrialMetrics& m) {
  return {{"t_h", m.t_h},
          {"t_r", m.t_r},
          {"t_all", m.t_all},
          {"t_r_last", m.t_r_last},
          {"team_time", m.team_time},
          {"door_openings", m.door_openings},
          {"replans", m.replans},
          {"feedback_events", m.feedback_events},
          {"timed_out", m.timed_out}};
}

void SweepSpec::validate() const {
  base.validate();
  if (trials_per_cell < 1) throw InvalidConfig("trials_per_cell must be >= 1");
  if (vary == VaryKind::kNRobots) {
    if (n_robots.empty()) throw InvalidConfig("n_robots sweep needs values");
    for (int n : n_robots) {
      if (n < 1) throw InvalidConfig("n_robots values must be >= 1");
    }
  }
  if (vary == VaryKind::kLaziness) {
    if (laziness.empty()) throw InvalidConfig("laziness sweep needs values");
    for (double l : laziness) {
      if (!(l >= 0.0 && l <= 1.0)) throw InvalidConfig("laziness values must be in [0,1]");
    }
  }
}

SweepSpec sweep_spec_from_json(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown(j, {"base", "vary", "values", "modes", "trials_per_cell", "seed_base"},
                 "sweep spec");
  SweepSpec s;
  if (j.contains("base")) s.base = trial_config_from_json(j["base"], base_dir);
  if (j.contains("modes")) {
    for (const auto& m : j["modes"]) s.modes.push_back(mode_from(m));
  }
  const std::string vary = j.value("vary", std::string("mode"));
  const json values = j.value("values", json::array());
  try {
    if (vary == "mode") {
      s.vary = VaryKind::kMode;
      for (const auto& m : values) s.modes.push_back(mode_from(m));
    } else if (vary == "n_robots") {
      s.vary = VaryKind::kNRobots;
      s.n_robots = values.get<std::vector<int>>();
    } else if (vary == "laziness") {
      s.vary = VaryKind::kLaziness;
      s.laziness = values.get<std::vector<double>>();
    } else {
      throw InvalidConfig("vary must be mode, n_robots or laziness, got '" + vary + "'");
    }
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("bad sweep values: ") + e.what());
  }
  read(j, "trials_per_cell", s.trials_per_cell);
  read(j, "seed_base", s.seed_base);
  s.validate();
  return s;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  return sweep_spec_from_json(read_json_file(path), path.parent_path());
}

std::string CellKey::label() const {
  std::string s = std::string(mode_name(mode)) + "/n=" + std::to_string(n_robots);
  if (laziness) s += "/laziness=" + fmt(*laziness);
  return s;
}

std::vector<double> SweepResult::column(const CellKey& cell,
                                        double (*pick)(const TrialMetrics&)) const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.cell == cell) out.push_back(pick(r.metrics));
  }
  return out;
}

std::vector<CellKey> expand_cells(const SweepSpec& spec) {
  std::vector<Mode> modes = spec.modes;
  if (modes.empty()) modes = {Mode::kFeedback, Mode::kNoFeedback, Mode::kNoComm};
  const auto& b = spec.base;
  std::vector<CellKey> cells;
  switch (spec.vary) {
    case VaryKind::kMode:
      for (Mode m : modes) cells.push_back({m, b.n_robots, b.human.laziness_override});
      break;
    case VaryKind::kNRobots:
      for (int n : spec.n_robots) {
        for (Mode m : modes) cells.push_back({m, n, b.human.laziness_override});
      }
      break;
    case VaryKind::kLaziness:
      for (double l : spec.laziness) {
        for (Mode m : modes) cells.push_back({m, b.n_robots, l});
      }
      break;
  }
  return cells;
}

CellSummary summarize_cell(const CellKey& cell, const std::vector<TrialRow>& rows) {
  std::vector<double> th, tr, ta, tl, tt, dopen, rep;
  for (const auto& r : rows) {
    if (!(r.cell == cell)) continue;
    const auto& m = r.metrics;
    th.push_back(m.t_h);
    tr.push_back(mean_of(m.t_r));
    ta.push_back(m.t_all);
    tl.push_back(m.t_r_last);
    tt.push_back(m.team_time);
    dopen.push_back(m.door_openings);
    rep.push_back(m.replans);
  }
  CellSummary s;
  s.cell = cell;
  s.n = ta.size();
  s.t_h = summarize(th);
  s.t_r_mean = summarize(tr);
  s.t_all = summarize(ta);
  s.t_r_last = summarize(tl);
  s.team_time = summarize(tt);
  s.door_openings = summarize(dopen);
  s.replans = summarize(rep);
  return s;
}

SweepResult run_sweep(const WorldMap& map, const SweepSpec& spec, int threads) {
  spec.validate();
  SweepResult result;
  result.cells = expand_cells(spec);
  const int per = spec.trials_per_cell;
  const std::size_t total = result.cells.size() * static_cast<std::size_t>(per);
  result.rows.resize(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      const CellKey& cell = result.cells[job / static_cast<std::size_t>(per)];
      const int trial = static_cast<int>(job % static_cast<std::size_t>(per));
      TrialConfig cfg = spec.base;
      cfg.human.mode = cell.mode;
      cfg.n_robots = cell.n_robots;
      cfg.human.laziness_override = cell.laziness;
      cfg.seed = spec.seed_base + static_cast<std::uint64_t>(trial);
      try {
        result.rows[job] = {cell, trial, cfg.seed, run_trial(map, cfg)};
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) {
          failure = std::make_exception_ptr(Error("trial failed in cell " + cell.label() +
                                                  " seed " + std::to_string(cfg.seed) + ": " +
                                                  e.what()));
        }
        next.store(total);
        return;
      }
    }
  };

  unsigned n = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  n = std::max(1u, std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(1, total))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& cell : result.cells) result.summaries.push_back(summarize_cell(cell, result.rows));
  return result;
}

void write_trials_csv(std::ostream& out, const SweepResult& result) {
  out << "mode,n_robots,laziness,trial,seed,t_h,t_r,t_all,t_r_last,team_time,door_openings,"
         "replans,feedback_events,timed_out\n";
  for (const auto& r : result.rows) {
    const auto& m = r.metrics;
    std::string tr;
    for (std::size_t i = 0; i < m.t_r.size(); ++i) {
      if (i) tr += ';';
      tr += fmt(m.t_r[i]);
    }
    out << mode_name(r.cell.mode) << ',' << r.cell.n_robots << ','
        << (r.cell.laziness ? fmt(*r.cell.laziness) : "") << ',' << r.trial << ',' << r.seed
        << ',' << fmt(m.t_h) << ',' << tr << ',' << fmt(m.t_all) << ',' << fmt(m.t_r_last) << ','
        << fmt(m.team_time) << ',' << m.door_openings << ',' << m.replans << ','
        << m.feedback_events << ',' << (m.timed_out ? 1 : 0) << '\n';
  }
}

json summary_json(const SweepSpec& spec, const SweepResult& result) {
  json j;
  j["units"] = {{"time", "seconds"}, {"counts", "events per trial"}};
  j["note"] =
      "Times are simulated seconds. The reference results table does not state its units "
      "(presumably minutes); compare orderings, not magnitudes.";
  j["trials_per_cell"] = spec.trials_per_cell;
  j["seed_base"] = spec.seed_base;
  j["base"] = trial_config_to_json(spec.base);
  j["cells"] = json::array();
  for (const auto& s : result.summaries) {
    json c{{"label", s.cell.label()},
           {"mode", mode_name(s.cell.mode)},
           {"n_robots", s.cell.n_robots},
           {"n", s.n}};
    c["laziness"] = s.cell.laziness ? json(*s.cell.laziness) : json(nullptr);
    c["metrics"] = {{"t_h", summary_to_json(s.t_h)},
                    {"t_r_mean", summary_to_json(s.t_r_mean)},
                    {"t_all", summary_to_json(s.t_all)},
                    {"t_r_last", summary_to_json(s.t_r_last)},
                    {"team_time", summary_to_json(s.team_time)},
                    {"door_openings", summary_to_json(s.door_openings)},
                    {"replans", summary_to_json(s.replans)}};
    j["cells"].push_back(std::move(c));
  }

  // Feedback against each baseline within the same (n_robots, laziness) group.
  j["comparisons"] = json::array();
  if (spec.trials_per_cell >= 2) {
    for (const auto& a : result.cells) {
      if (a.mode != Mode::kFeedback) continue;
      for (const auto& b : result.cells) {
        if (b.mode == Mode::kFeedback || b.n_robots != a.n_robots || b.laziness != a.laziness) {
          continue;
        }
        for (auto [name, pick] :
             std::vector<std::pair<const char*, double (*)(const TrialMetrics&)>>{
                 {"t_all", [](const TrialMetrics& m) { return m.t_all; }},
                 {"team_time", [](const TrialMetrics& m) { return m.team_time; }},
                 {"door_openings",
                  [](const TrialMetrics& m) { return static_cast<double>(m.door_openings); }}}) {
          const Comparison c = compare(result.column(a, pick), result.column(b, pick));
          j["comparisons"].push_back({{"a", a.label()},
                                      {"b", b.label()},
                                      {"metric", name},
                                      {"mean_diff", c.mean_diff},
                                      {"u_statistic", c.u_statistic},
                                      {"p_value", c.p_value},
                                      {"welch_t", c.welch_t},
                                      {"welch_p", c.welch_p}});
        }
      }
    }
  }
  return j;
}

void write_sweep_outputs(const std::filesystem::path& dir, const SweepSpec& spec,
                         const SweepResult& result) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "trials.csv");
  if (!csv) throw InvalidConfig("cannot write " + (dir / "trials.csv").string());
  write_trials_csv(csv, result);
  std::ofstream summary(dir / "summary.json");
  if (!summary) throw InvalidConfig("cannot write " + (dir / "summary.json").string());
  summary << summary_json(spec, result).dump(2) << '\n';
}

}  // namespace arn
