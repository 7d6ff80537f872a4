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
#include "mmreflect/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "mmreflect/errors.hpp"

namespace mmreflect {
namespace {

constexpr double kTxDistanceFromPanel = 3.8;
constexpr double kBoardWidth = 1.2;
constexpr double kDefaultMountHeight = 1.35;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

class Entries {
 public:
  explicit Entries(std::string source) : source_(std::move(source)) {}

  void add(std::string key, std::string value, std::size_t line) {
    if (values_.count(key) != 0) {
      throw ConfigError(source_ + ":" + std::to_string(line) +
                        ": duplicate key '" + key + "'");
    }
    values_.emplace(std::move(key), Value{std::move(value), line});
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::optional<double> number(const std::string& key) const {
    const auto* v = find(key);
    if (v == nullptr) return std::nullopt;
    return to_double(key, v->text, v->line);
  }

  std::optional<std::vector<double>> numbers(const std::string& key) const {
    const auto* v = find(key);
    if (v == nullptr) return std::nullopt;
    std::vector<double> out;
    std::stringstream ss(v->text);
    std::string field;
    while (std::getline(ss, field, ',')) {
      out.push_back(to_double(key, field, v->line));
    }
    return out;
  }

  std::optional<std::string> text(const std::string& key) const {
    const auto* v = find(key);
    if (v == nullptr) return std::nullopt;
    return v->text;
  }

  std::optional<std::uint64_t> unsigned_integer(const std::string& key) const {
    const auto* v = find(key);
    if (v == nullptr) return std::nullopt;
    const std::string t = trim(v->text);
    std::size_t used = 0;
    unsigned long long out = 0;
    try {
      if (t.empty() || t[0] == '-') throw std::invalid_argument(t);
      out = std::stoull(t, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) fail(key, v->line, "expected an unsigned integer");
    return out;
  }

  std::optional<bool> boolean(const std::string& key) const {
    const auto* v = find(key);
    if (v == nullptr) return std::nullopt;
    const std::string t = trim(v->text);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    fail(key, v->line, "expected true or false");
  }

  std::optional<Point3> point(const std::string& key, double default_z) const {
    const auto nums = numbers(key);
    if (!nums) return std::nullopt;
    if (nums->size() == 2) return Point3{(*nums)[0], (*nums)[1], default_z};
    if (nums->size() == 3) return Point3{(*nums)[0], (*nums)[1], (*nums)[2]};
    fail(key, find(key)->line, "expected 'x, y' or 'x, y, z'");
  }

  [[noreturn]] void fail(const std::string& key, std::size_t line,
                         const std::string& why) const {
    throw ConfigError(source_ + ":" + std::to_string(line) + ": " + key +
                      ": " + why);
  }

 private:
  struct Value {
    std::string text;
    std::size_t line;
  };

  const Value* find(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }

  double to_double(const std::string& key, const std::string& field,
                   std::size_t line) const {
    const std::string t = trim(field);
    std::size_t used = 0;
    double out = 0.0;
    try {
      out = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size() || !std::isfinite(out)) {
      fail(key, line, "expected a finite number, got '" + t + "'");
    }
    return out;
  }

  std::string source_;
  std::map<std::string, Value> values_;
};

std::size_t to_count(const Entries& e, const std::string& key,
                     std::size_t fallback) {
  const auto v = e.unsigned_integer(key);
  return v ? static_cast<std::size_t>(*v) : fallback;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "corridor_width",
      "tx_position",
      "rx_height",
      "lidar_position",
      "carrier_frequency",
      "panel.center",
      "panel.azimuth",
      "panel.width",
      "panel.height",
      "panel.mount_height",
      "panel.material",
      "reflection_loss.silver",
      "reflection_loss.copper",
      "reflection_loss.mirror",
      "reflection_loss.foam",
      "tx_power",
      "antenna_gain",
      "ripple_amplitude",
      "ripple_period",
      "shadowing_sigma",
      "shadowing_correlation",
      "seed",
      "kappa",
      "delta_max",
      "literal_outage_inequality",
      "grid.origin",
      "grid.cell_size",
      "grid.n_rows",
      "grid.n_cols",
      "grid.masked",
      "user_height",
      "samples_per_user",
      "quantile",
  };
  return keys;
}

void ExperimentConfig::validate() const {
  scene.validate();
  synth.validate();
  backoff.validate();
  lidar.validate();
  if (!(quantile > 0.0 && quantile < 1.0)) {
    throw ConfigError("quantile must lie in (0, 1)");
  }
}

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
  Entries e{std::string(source)};
  const auto& known = config_keys();
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(std::string(source) + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(std::string(source) + ":" + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
    if (value.empty()) e.fail(key, line_no, "missing value");
    e.add(std::move(key), std::move(value), line_no);
  }

  ExperimentConfig cfg;
  SceneConfig& s = cfg.scene;
  s.corridor_width = e.number("corridor_width").value_or(s.corridor_width);
  s.rx_height = e.number("rx_height").value_or(s.rx_height);
  s.carrier_frequency =
      e.number("carrier_frequency").value_or(s.carrier_frequency);

  const double mount =
      e.number("panel.mount_height").value_or(kDefaultMountHeight);
  s.panel.center = e.point("panel.center", mount)
                       .value_or(corner_panel_center(s.corridor_width,
                                                     kBoardWidth, mount));
  if (e.has("panel.mount_height")) s.panel.center.z = mount;
  s.panel.azimuth_deg = e.number("panel.azimuth").value_or(s.panel.azimuth_deg);
  s.panel.width = e.number("panel.width").value_or(s.panel.width);
  s.panel.height = e.number("panel.height").value_or(s.panel.height);
  if (const auto m = e.text("panel.material")) {
    try {
      s.panel.material = parse_material(trim(*m));
    } catch (const ConfigError& err) {
      e.fail("panel.material", 0, err.what());
    }
  }
  s.losses.silver = e.number("reflection_loss.silver").value_or(s.losses.silver);
  s.losses.copper = e.number("reflection_loss.copper").value_or(s.losses.copper);
  s.losses.mirror = e.number("reflection_loss.mirror").value_or(s.losses.mirror);
  s.losses.foam = e.number("reflection_loss.foam").value_or(s.losses.foam);

  const Point3 default_tx{s.panel.center.x - kTxDistanceFromPanel,
                          -0.5 * s.corridor_width, 1.5};
  s.tx_position = e.point("tx_position", default_tx.z).value_or(default_tx);
  s.lidar_position =
      e.point("lidar_position", s.tx_position.z).value_or(s.tx_position);

  SynthParams& p = cfg.synth;
  p.tx_power = e.number("tx_power").value_or(p.tx_power);
  p.antenna_gain = e.number("antenna_gain").value_or(p.antenna_gain);
  p.ripple_amplitude = e.number("ripple_amplitude").value_or(p.ripple_amplitude);
  p.ripple_period = e.number("ripple_period").value_or(p.ripple_period);
  p.shadowing_sigma = e.number("shadowing_sigma").value_or(p.shadowing_sigma);
  p.shadowing_correlation =
      e.number("shadowing_correlation").value_or(p.shadowing_correlation);
  p.seed = e.unsigned_integer("seed").value_or(p.seed);

  cfg.backoff.kappa = e.number("kappa").value_or(cfg.backoff.kappa);
  cfg.backoff.delta_max = e.number("delta_max").value_or(cfg.backoff.delta_max);
  if (e.boolean("literal_outage_inequality").value_or(false)) {
    cfg.outage_rule = OutageRule::kLiteral;
  }

  const GridSpec def = GridSpec::Default(s.rx_height);
  const Point3 origin = e.point("grid.origin", s.rx_height).value_or(def.origin());
  const double cell = e.number("grid.cell_size").value_or(def.cell_size());
  const std::size_t rows = to_count(e, "grid.n_rows", def.n_rows());
  const std::size_t cols = to_count(e, "grid.n_cols", def.n_cols());
  std::vector<std::uint8_t> mask(rows * cols, 1);
  if (const auto masked = e.text("grid.masked")) {
    std::stringstream ss(*masked);
    std::string item;
    while (std::getline(ss, item, ';')) {
      item = trim(item);
      if (item.empty()) continue;
      std::size_t r = 0, c = 0;
      char colon = 0;
      std::istringstream cell_in(item);
      if (!(cell_in >> r >> colon >> c) || colon != ':' || r >= rows ||
          c >= cols) {
        e.fail("grid.masked", 0, "expected 'row:col; ...' within the grid");
      }
      mask[r * cols + c] = 0;
    }
  }
  try {
    cfg.grid = GridSpec(origin, cell, rows, cols, std::move(mask));
  } catch (const ParameterError& err) {
    throw ConfigError(std::string(source) + ": grid: " + err.what());
  }

  cfg.lidar.position = s.lidar_position;
  cfg.lidar.user_height = e.number("user_height").value_or(cfg.lidar.user_height);
  cfg.lidar.samples_per_user =
      to_count(e, "samples_per_user", cfg.lidar.samples_per_user);
  cfg.quantile = e.number("quantile").value_or(cfg.quantile);

  try {
    cfg.validate();
  } catch (const Error& err) {
    throw ConfigError(std::string(source) + ": " + err.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot read config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace mmreflect
