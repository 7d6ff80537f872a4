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
#include "mmreflect/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "mmreflect/errors.hpp"

namespace mmreflect {

std::string Table::cell(std::size_t row, std::size_t col) const {
  char buf[64];
  const double v = rows[row][col];
  const int decimals = columns[col].decimals;
  // Avoid "-0.0000".
  const double shown = (std::abs(v) < 0.5 * std::pow(10.0, -decimals)) ? 0.0 : v;
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, shown);
  return buf;
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c > 0) out += ',';
    out += columns[c].name;
  }
  out += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) out += ',';
      out += cell(r, c);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path.string() + ": write failed");
}

Table grid_table(const RssGrid& grid) {
  Table t{{{"x_m", 4}, {"y_m", 4}, {"rss_db", 4}}, {}};
  for (const auto& c : grid.spec().valid_cells()) {
    const Point3 p = grid.spec().center(c);
    t.rows.push_back({p.x, p.y, grid.at(c)});
  }
  return t;
}

Table backoff_table(const BackoffMap& map) {
  Table t{{{"x_m", 4}, {"y_m", 4}, {"delta_db", 4}}, {}};
  for (const auto& c : map.spec().valid_cells()) {
    const Point3 p = map.spec().center(c);
    t.rows.push_back({p.x, p.y, map.at(c)});
  }
  return t;
}

Table outage_table(std::span<const OutageCurve> curves) {
  Table t{{{"displacement_m", 4}, {"kappa", 4}, {"p_out", 6}, {"trials", 0}}, {}};
  for (const auto& curve : curves) {
    for (std::size_t j = 0; j < curve.p_out.size(); ++j) {
      t.rows.push_back({curve.displacements[j], curve.kappa, curve.p_out[j],
                        static_cast<double>(curve.trials)});
    }
  }
  return t;
}

Table schedule_table(std::span<const KCcdf> curves) {
  Table t{{{"threshold_db", 4}, {"k", 0}, {"ccdf", 6}}, {}};
  for (const auto& kc : curves) {
    for (std::size_t j = 0; j < kc.curve.prob.size(); ++j) {
      t.rows.push_back({kc.curve.thresholds[j], static_cast<double>(kc.k),
                        kc.curve.prob[j]});
    }
  }
  return t;
}

Table ccdf_table(const CcdfCurve& curve) {
  Table t{{{"threshold_db", 4}, {"ccdf", 6}}, {}};
  for (std::size_t j = 0; j < curve.prob.size(); ++j) {
    t.rows.push_back({curve.thresholds[j], curve.prob[j]});
  }
  return t;
}

Table coverage_table(std::span<const CoverageRow> rows) {
  Table t{{{"width_m", 4}, {"height_m", 4}, {"coverage", 6}}, {}};
  for (const auto& r : rows) t.rows.push_back({r.width, r.height, r.coverage});
  return t;
}

Table detection_table(const DetectionMap& map) {
  Table t{{{"x_m", 4}, {"y_m", 4}, {"detectable", 0}}, {}};
  for (const auto& c : map.spec.valid_cells()) {
    const Point3 p = map.spec.center(c);
    t.rows.push_back({p.x, p.y, map.at(c) ? 1.0 : 0.0});
  }
  return t;
}

std::vector<double> load_samples(const std::filesystem::path& path) {
  using Kind = GridParseError::Kind;
  std::ifstream in(path);
  if (!in) {
    throw GridParseError(Kind::kMissingFile, 0,
                         path.string() + ": cannot open sample file");
  }
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line == "x_m,y_m,rss_db") return load_grid(path).values();
  if (line != "rss_db") {
    throw GridParseError(Kind::kBadHeader, 1,
                         path.string() + ":1: expected header 'rss_db' or "
                                         "'x_m,y_m,rss_db'");
  }
  std::vector<double> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    double v = 0.0;
    std::size_t used = 0;
    try {
      v = std::stod(line, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != line.size()) {
      throw GridParseError(Kind::kMalformedRow, line_no,
                           where + ": expected one number");
    }
    if (!std::isfinite(v)) {
      throw GridParseError(Kind::kNonFinite, line_no, where + ": non-finite value");
    }
    samples.push_back(v);
  }
  if (samples.empty()) {
    throw GridParseError(Kind::kNoValidCells, 0, path.string() + ": no samples");
  }
  return samples;
}

}  // namespace mmreflect
