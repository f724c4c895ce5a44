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

// arn: run single trials, sweeps, the live gateway, and log replays.

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "arn/errors.hpp"
#include "arn/executive.hpp"
#include "arn/gateway.hpp"
#include "arn/gateway_server.hpp"
#include "arn/harness.hpp"
#include "arn/world.hpp"

namespace fs = std::filesystem;

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop.store(true); }

struct TrialFlags {
  std::string config;
  std::string map;
  std::string mode;
  int robots = 0;
  long long seed = -1;
};

void add_trial_flags(CLI::App* app, TrialFlags& f) {
  app->add_option("--config", f.config, "trial config JSON");
  app->add_option("--map", f.map, "map JSON (overrides the config)");
  app->add_option("--mode", f.mode, "feedback | nofeedback | nocomm")
      ->check(CLI::IsMember({"feedback", "nofeedback", "nocomm"}));
  app->add_option("--robots", f.robots, "number of robots")->check(CLI::PositiveNumber);
  app->add_option("--seed", f.seed, "trial seed")->check(CLI::NonNegativeNumber);
}

arn::TrialConfig resolve_config(const TrialFlags& f) {
  arn::TrialConfig c;
  if (!f.config.empty()) c = arn::load_trial_config(f.config);
  if (!f.map.empty()) c.map_path = f.map;
  if (c.map_path.empty()) c.map_path = ARN_DEFAULT_MAP;
  if (!f.mode.empty()) c.human.mode = *arn::parse_mode(f.mode);
  if (f.robots > 0) c.n_robots = f.robots;
  if (f.seed >= 0) c.seed = static_cast<std::uint64_t>(f.seed);
  c.validate();
  return c;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw arn::InvalidConfig("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

int cmd_simulate(const TrialFlags& f, const std::string& out_dir) {
  arn::TrialConfig cfg = resolve_config(f);
  const arn::WorldMap map = arn::load_map_file(cfg.map_path);
  fs::create_directories(out_dir);

  std::ofstream log(fs::path(out_dir) / "events.jsonl");
  if (!log) throw arn::InvalidConfig("cannot write events.jsonl in " + out_dir);
  arn::Executive exec(map, cfg);
  exec.set_event_sink([&log](const arn::SimEvent& e) { arn::write_event_line(log, e); });
  exec.run();
  const arn::TrialMetrics m = exec.metrics();

  write_json(fs::path(out_dir) / "config.json", arn::trial_config_to_json(cfg));
  write_json(fs::path(out_dir) / "metrics.json", arn::metrics_to_json(m));
  std::cout << arn::metrics_to_json(m).dump() << '\n';
  return m.timed_out ? 3 : 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir, int threads, int trials) {
  arn::SweepSpec spec = arn::load_sweep_spec(spec_path);
  if (trials > 0) spec.trials_per_cell = trials;
  if (spec.base.map_path.empty()) spec.base.map_path = ARN_DEFAULT_MAP;
  const arn::WorldMap map = arn::load_map_file(spec.base.map_path);
  const arn::SweepResult result = arn::run_sweep(map, spec, threads);
  arn::write_sweep_outputs(out_dir, spec, result);
  for (const auto& s : result.summaries) {
    std::cout << s.cell.label() << "  t_all " << s.t_all.mean << " (" << s.t_all.sd << ")"
              << "  team_time " << s.team_time.mean << "  door_openings " << s.door_openings.mean
              << '\n';
  }
  return 0;
}

int cmd_serve(const TrialFlags& f, int port, bool live, const arn::ServeOptions& opts) {
  arn::TrialConfig cfg = resolve_config(f);
  cfg.live = live;
  const arn::WorldMap map = arn::load_map_file(cfg.map_path);
  arn::Executive exec(map, cfg);
  arn::Gateway gateway(exec.inbox(), map);
  arn::GatewayServer server(gateway, static_cast<std::uint16_t>(port));
  server.start();
  std::cerr << "listening on ws://127.0.0.1:" << server.port() << "/ (GET /frame for polling)\n";

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const arn::LoopOutcome outcome = arn::serve_loop(exec, server, opts, g_stop);
  server.stop();
  std::cout << arn::metrics_to_json(exec.metrics()).dump() << '\n';
  return outcome == arn::LoopOutcome::kTimedOut ? 3 : 0;
}

std::vector<arn::SimEvent> read_log(const fs::path& path, std::vector<std::string>* lines) {
  std::ifstream in(path);
  if (!in) throw arn::ParseError("cannot open " + path.string());
  std::vector<arn::SimEvent> events;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw arn::ParseError(path.string() + ":" + std::to_string(n) + ": not JSON");
    }
    events.push_back(arn::event_from_json(j));
    if (lines) lines->push_back(line);
  }
  return events;
}

int cmd_replay(const std::string& log_path, std::string config_path, bool quiet) {
  std::vector<std::string> lines;
  const auto events = read_log(log_path, &lines);

  std::map<std::string, int> counts;
  for (const auto& e : events) {
    ++counts[arn::event_type_name(e.type)];
    if (quiet) continue;
    std::cout << "t=" << e.t << ' ' << arn::event_type_name(e.type);
    if (e.robot >= 0) std::cout << " robot=" << e.robot;
    if (!e.door.empty()) std::cout << " door=" << e.door;
    if (!e.detail.empty()) std::cout << ' ' << e.detail.dump();
    std::cout << '\n';
  }
  std::cout << events.size() << " events";
  for (const auto& [k, v] : counts) std::cout << ", " << k << '=' << v;
  std::cout << '\n';

  // With the trial's config at hand, rerun it and compare byte for byte.
  if (config_path.empty()) {
    const fs::path sibling = fs::path(log_path).parent_path() / "config.json";
    if (fs::exists(sibling)) config_path = sibling.string();
  }
  if (config_path.empty()) return 0;
  TrialFlags f;
  f.config = config_path;
  const arn::TrialConfig cfg = resolve_config(f);
  const arn::WorldMap map = arn::load_map_file(cfg.map_path);
  std::vector<arn::SimEvent> rerun;
  arn::run_trial(map, cfg, &rerun);
  std::size_t i = 0;
  for (; i < rerun.size() && i < lines.size(); ++i) {
    std::ostringstream os;
    arn::write_event_line(os, rerun[i]);
    std::string s = os.str();
    if (!s.empty() && s.back() == '\n') s.pop_back();
    if (s != lines[i]) break;
  }
  if (i == rerun.size() && i == lines.size()) {
    std::cout << "replay matches a fresh run of " << config_path << '\n';
    return 0;
  }
  std::cout << "replay diverges from a fresh run at event " << i << '\n';
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ARN human multi-robot collaboration simulator"};
  app.require_subcommand(1);

  TrialFlags sim_flags;
  std::string sim_out = "out";
  auto* simulate = app.add_subcommand("simulate", "run one trial");
  add_trial_flags(simulate, sim_flags);
  simulate->add_option("--out", sim_out, "output directory");

  std::string spec_path;
  std::string sweep_out = "sweep_out";
  int threads = 0;
  int trials = 0;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sweep->add_option("--spec", spec_path, "sweep spec JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_option("--threads", threads, "worker threads (0 = hardware)");
  sweep->add_option("--trials", trials, "override trials_per_cell");

  TrialFlags serve_flags;
  int port = 8080;
  bool live = false;
  arn::ServeOptions serve_opts;
  auto* serve = app.add_subcommand("serve", "serve a trial over WebSocket");
  add_trial_flags(serve, serve_flags);
  serve->add_option("--port", port, "TCP port (0 = ephemeral)")->check(CLI::Range(0, 65535));
  serve->add_flag("--live", live, "no simulated human; the operator drives doors and feedback");
  serve->add_option("--tick-ms", serve_opts.tick_ms, "wall-clock ms per simulated second");
  serve->add_option("--frame-every", serve_opts.frame_every, "broadcast every k ticks")
      ->check(CLI::PositiveNumber);
  serve->add_flag("--exit-when-done", serve_opts.exit_when_done, "stop when the trial ends");

  std::string log_path;
  std::string replay_config;
  bool quiet = false;
  auto* replay = app.add_subcommand("replay", "print and verify an event log");
  replay->add_option("--log", log_path, "events.jsonl")->required()->check(CLI::ExistingFile);
  replay->add_option("--config", replay_config, "config to rerun (default: config.json beside the log)");
  replay->add_flag("-q,--quiet", quiet, "only print the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version come through here with code 0.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return cmd_simulate(sim_flags, sim_out);
    if (*sweep) return cmd_sweep(spec_path, sweep_out, threads, trials);
    if (*serve) return cmd_serve(serve_flags, port, live, serve_opts);
    if (*replay) return cmd_replay(log_path, replay_config, quiet);
  } catch (const arn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
