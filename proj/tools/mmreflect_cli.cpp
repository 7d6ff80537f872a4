// Copyright 2026 The mmreflect Authors
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
// mmreflect command-line driver. Each subcommand loads a config, runs one
// library pipeline and writes a CSV (or JSON) table plus a run manifest.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmreflect/backoff.hpp"
#include "mmreflect/config.hpp"
#include "mmreflect/errors.hpp"
#include "mmreflect/grid.hpp"
#include "mmreflect/lidar.hpp"
#include "mmreflect/outage.hpp"
#include "mmreflect/report.hpp"
#include "mmreflect/scheduler.hpp"
#include "mmreflect/stats.hpp"
#include "mmreflect/synth.hpp"

namespace {

using namespace mmreflect;
using json = nlohmann::ordered_json;

// Process exit statuses, one per failure class.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,           // unknown subcommand or flag, bad flag value
  kMissingFlag = 3,
  kBadConfig = 4,
  kBadGrid = 5,
  kIo = 6,
  kBadParameter = 7,
};

struct Shared {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool json = false;
  unsigned threads = 1;
};

struct Options {
  std::string grid_path;
  double cell_size = 0.0;
  std::optional<double> kappa;
  std::optional<double> delta_max;
  std::vector<double> kappas = {0.0, 0.5, 1.0, 2.0};
  std::vector<double> displacements = {0.3, 0.9, 1.5, 2.1};
  std::size_t trials = 1000;
  bool literal = false;
  std::vector<std::size_t> ks = {1, 2, 4};
  std::size_t instances = 1000;
  std::optional<double> quantile;
  std::vector<double> widths;
  std::vector<double> heights;
  std::string detection_out;
  std::string input;
  std::size_t n_thresholds = 81;
};

ExperimentConfig load(const Shared& shared) {
  if (shared.config_path.empty()) return parse_config("", "<defaults>");
  return load_config(shared.config_path);
}

std::uint64_t seed_or(const Shared& shared, std::uint64_t fallback) {
  return shared.seed.value_or(fallback);
}

std::string render(const Table& table, bool as_json) {
  if (!as_json) return table.to_csv();
  json rows = json::array();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    json row = json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      // Same rounding as the CSV.
      const std::string text = table.cell(r, c);
      if (table.columns[c].decimals == 0) {
        row[table.columns[c].name] = std::stoll(text);
      } else {
        row[table.columns[c].name] = std::stod(text);
      }
    }
    rows.push_back(std::move(row));
  }
  json cols = json::array();
  for (const auto& c : table.columns) cols.push_back(c.name);
  return json{{"columns", cols}, {"rows", rows}}.dump(2) + "\n";
}

class Runner {
 public:
  Runner(std::string command, const Shared& shared)
      : command_(std::move(command)), shared_(shared) {}

  // Writes the primary output to --out (or stdout).
  void emit(const Table& table, std::uint64_t seed) {
    const std::string text = render(table, shared_.json);
    seed_ = seed;
    if (shared_.out.empty()) {
      std::fwrite(text.data(), 1, text.size(), stdout);
      return;
    }
    write_text(shared_.out, text);
    outputs_.push_back(shared_.out);
  }

  // Writes a secondary output next to the primary one.
  void emit_extra(const std::string& path, const Table& table) {
    write_text(path, render(table, shared_.json));
    outputs_.push_back(path);
  }

  void write_manifest() const {
    if (shared_.out.empty()) return;
    json m;
    m["command"] = command_;
    m["config_path"] = shared_.config_path;
    m["seed"] = seed_;
    m["output_paths"] = outputs_;
    m["tool_version"] = MMREFLECT_VERSION;
    write_text(shared_.out + ".manifest.json", m.dump(2) + "\n");
  }

 private:
  std::string command_;
  const Shared& shared_;
  std::uint64_t seed_ = 0;
  std::vector<std::string> outputs_;
};

RssGrid read_grid(const Options& o, const ExperimentConfig& cfg) {
  GridLoadOptions load;
  load.cell_size = o.cell_size;
  load.height = cfg.scene.rx_height;
  return load_grid(o.grid_path, load);
}

BackoffParams backoff_params(const Options& o, const ExperimentConfig& cfg) {
  BackoffParams p = cfg.backoff;
  if (o.kappa) p.kappa = *o.kappa;
  if (o.delta_max) p.delta_max = *o.delta_max;
  p.validate();
  return p;
}

void run_synth(const Shared& s, const Options&, Runner& r) {
  ExperimentConfig cfg = load(s);
  cfg.synth.seed = seed_or(s, cfg.synth.seed);
  const RssGrid grid = synthesize_rss_grid(cfg.scene, cfg.grid, cfg.synth, s.threads);
  r.emit(grid_table(grid), cfg.synth.seed);
}

void run_import(const Shared& s, const Options& o, Runner& r) {
  const ExperimentConfig cfg = load(s);
  r.emit(grid_table(read_grid(o, cfg)), seed_or(s, 0));
}

void run_backoff(const Shared& s, const Options& o, Runner& r) {
  const ExperimentConfig cfg = load(s);
  const RssGrid grid = read_grid(o, cfg);
  r.emit(backoff_table(compute_backoff_map(grid, backoff_params(o, cfg))),
         seed_or(s, 0));
}

void run_outage(const Shared& s, const Options& o, Runner& r) {
  const ExperimentConfig cfg = load(s);
  const RssGrid grid = read_grid(o, cfg);
  const std::uint64_t seed = seed_or(s, cfg.synth.seed);
  OutageOptions opts;
  opts.rule = o.literal ? OutageRule::kLiteral : cfg.outage_rule;
  opts.threads = s.threads;
  const BackoffParams base = backoff_params(o, cfg);
  std::vector<OutageCurve> curves;
  for (const double kappa : o.kappas) {
    const BackoffMap map = compute_backoff_map(grid, kappa, base.delta_max);
    curves.push_back(estimate_outage(grid, map, cfg.scene, o.displacements,
                                     o.trials, seed, opts));
  }
  r.emit(outage_table(curves), seed);
}

void run_schedule(const Shared& s, const Options& o, Runner& r) {
  const ExperimentConfig cfg = load(s);
  const RssGrid grid = read_grid(o, cfg);
  const std::uint64_t seed = seed_or(s, cfg.synth.seed);
  const CellSet region = high_rss_region(grid, o.quantile.value_or(cfg.quantile));
  DiversityOptions opts;
  opts.thresholds = default_thresholds(grid.values(), o.n_thresholds);
  opts.threads = s.threads;
  std::vector<KCcdf> curves;
  for (const std::size_t k : o.ks) {
    curves.push_back({k, diversity_ccdf(grid, region, k, o.instances, seed, opts)});
  }
  r.emit(schedule_table(curves), seed);
}

void run_lidar(const Shared& s, const Options& o, Runner& r) {
  const ExperimentConfig cfg = load(s);
  const std::vector<double> widths =
      o.widths.empty() ? std::vector<double>{cfg.scene.panel.width} : o.widths;
  const std::vector<double> heights =
      o.heights.empty() ? std::vector<double>{cfg.scene.panel.height} : o.heights;
  if (!o.detection_out.empty() && widths.size() * heights.size() != 1) {
    throw ParameterError("--detection-out needs exactly one mirror size");
  }
  std::vector<CoverageRow> rows;
  std::optional<DetectionMap> last;
  for (const double w : widths) {
    for (const double h : heights) {
      SceneConfig scene = cfg.scene;
      scene.panel.width = w;
      scene.panel.height = h;
      scene.validate();
      last = coverage_fraction(scene, cfg.lidar, cfg.grid, s.threads);
      rows.push_back({w, h, last->coverage});
    }
  }
  r.emit(coverage_table(rows), seed_or(s, 0));
  if (!o.detection_out.empty()) r.emit_extra(o.detection_out, detection_table(*last));
}

void run_ccdf(const Shared& s, const Options& o, Runner& r) {
  const std::vector<double> samples = load_samples(o.input);
  const auto thresholds = default_thresholds(samples, o.n_thresholds);
  r.emit(ccdf_table(ccdf(samples, thresholds)), seed_or(s, 0));
}

int fail(int code, const std::string& message) {
  std::fprintf(stderr, "mmreflect: error: %s\n", message.c_str());
  return code;
}

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corner-reflector coverage experiments on 2-D RSS grids."};
  app.set_version_flag("--version", MMREFLECT_VERSION);
  app.require_subcommand(1);

  Shared shared;
  Options opt;

  auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--config", shared.config_path, "Scene/experiment config file");
    sub->add_option("--seed", shared.seed, "Master seed (u64)");
    sub->add_option("--out", shared.out, "Output path (default: stdout)");
    sub->add_flag("--json", shared.json, "Write JSON instead of CSV");
    sub->add_option("--threads", shared.threads, "Worker threads")
        ->check(CLI::Range(1u, 1024u));
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid", opt.grid_path, "Input grid CSV")->required();
    sub->add_option("--cell-size", opt.cell_size,
                    "Grid pitch in m (default: inferred)");
  };

  using Handler = void (*)(const Shared&, const Options&, Runner&);
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto* synth = app.add_subcommand("synth-grid", "Synthesize an RSS grid");
  add_shared(synth);
  commands.emplace_back(synth, run_synth);

  auto* import = app.add_subcommand("import-grid", "Validate and normalize a grid CSV");
  add_shared(import);
  add_grid(import);
  commands.emplace_back(import, run_import);

  auto* backoff = app.add_subcommand("backoff-map", "Per-cell back-off map");
  add_shared(backoff);
  add_grid(backoff);
  backoff->add_option("--kappa", opt.kappa, "Back-off scale");
  backoff->add_option("--delta-max", opt.delta_max, "Back-off cap in dB");
  commands.emplace_back(backoff, run_backoff);

  auto* outage = app.add_subcommand("outage", "Outage probability vs displacement");
  add_shared(outage);
  add_grid(outage);
  outage->add_option("--kappa", opt.kappas, "Back-off scales")->delimiter(',');
  outage->add_option("--delta-max", opt.delta_max, "Back-off cap in dB");
  outage->add_option("--displacements", opt.displacements, "Displacements in m")
      ->delimiter(',');
  outage->add_option("--trials", opt.trials, "Trials per displacement")
      ->check(CLI::PositiveNumber);
  outage->add_flag("--literal-inequality", opt.literal,
                   "Use the printed outage inequality");
  commands.emplace_back(outage, run_outage);

  auto* schedule = app.add_subcommand("schedule", "Multi-user scheduling CCDF");
  add_shared(schedule);
  add_grid(schedule);
  schedule->add_option("--k", opt.ks, "User counts")->delimiter(',');
  schedule->add_option("--instances", opt.instances, "Instances per k")
      ->check(CLI::PositiveNumber);
  schedule->add_option("--quantile", opt.quantile, "High-RSS region fraction");
  schedule->add_option("--thresholds", opt.n_thresholds, "Threshold count")
      ->check(CLI::Range(2, 100000));
  commands.emplace_back(schedule, run_schedule);

  auto* lidar = app.add_subcommand("lidar-coverage", "LiDAR coverage per mirror size");
  add_shared(lidar);
  lidar->add_option("--width,--widths", opt.widths, "Mirror widths in m")
      ->delimiter(',');
  lidar->add_option("--height,--heights", opt.heights, "Mirror heights in m")
      ->delimiter(',');
  lidar->add_option("--detection-out", opt.detection_out,
                    "Per-cell detection CSV (one mirror size only)");
  commands.emplace_back(lidar, run_lidar);

  auto* ccdf_cmd = app.add_subcommand("ccdf", "Empirical CCDF of RSS samples");
  add_shared(ccdf_cmd);
  ccdf_cmd->add_option("--input", opt.input, "Grid CSV or rss_db column CSV")
      ->required();
  ccdf_cmd->add_option("--thresholds", opt.n_thresholds, "Threshold count")
      ->check(CLI::Range(2, 100000));
  commands.emplace_back(ccdf_cmd, run_ccdf);

  if (argc > 1 && argv[1][0] != '-') {
    const std::string name = argv[1];
    bool known = false;
    for (const auto& entry : commands) known |= entry.first->get_name() == name;
    if (!known) return fail(kUsage, "unknown subcommand '" + name + "' (try --help)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::RequiredError& e) {
    if (app.get_subcommands().empty()) {
      return fail(kUsage, "missing subcommand (try --help)");
    }
    return fail(kMissingFlag, one_line(e.what()));
  } catch (const CLI::ParseError& e) {
    return fail(kUsage, one_line(e.what()));
  }

  try {
    for (const auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      Runner runner(sub->get_name(), shared);
      handler(shared, opt, runner);
      runner.write_manifest();
    }
  } catch (const ConfigError& e) {
    return fail(kBadConfig, one_line(e.what()));
  } catch (const GridParseError& e) {
    return fail(kBadGrid, one_line(e.what()));
  } catch (const IoError& e) {
    return fail(kIo, one_line(e.what()));
  } catch (const Error& e) {
    return fail(kBadParameter, one_line(e.what()));
  } catch (const std::exception& e) {
    return fail(kInternal, one_line(e.what()));
  }
  return kOk;
}
