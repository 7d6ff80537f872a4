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
#ifndef MMREFLECT_REPORT_HPP_
#define MMREFLECT_REPORT_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mmreflect/backoff.hpp"
#include "mmreflect/lidar.hpp"
#include "mmreflect/outage.hpp"
#include "mmreflect/stats.hpp"

namespace mmreflect {

// Plot-ready numeric table. Each column prints with a fixed number of
// decimals (0 prints an integer), so output bytes are a pure function of the
// values.
struct Table {
  struct Column {
    std::string name;
    int decimals = 4;
  };

  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
  // Formatted cell text, as used in the CSV.
  std::string cell(std::size_t row, std::size_t col) const;
};

void write_text(const std::filesystem::path& path, const std::string& text);

// x_m,y_m,rss_db, same bytes as save_grid.
Table grid_table(const RssGrid& grid);
// x_m,y_m,delta_db
Table backoff_table(const BackoffMap& map);
// displacement_m,kappa,p_out,trials
Table outage_table(std::span<const OutageCurve> curves);
// threshold_db,k,ccdf
struct KCcdf {
  std::size_t k = 1;
  CcdfCurve curve;
};
Table schedule_table(std::span<const KCcdf> curves);
// threshold_db,ccdf
Table ccdf_table(const CcdfCurve& curve);
// width_m,height_m,coverage
struct CoverageRow {
  double width = 0.0;
  double height = 0.0;
  double coverage = 0.0;
};
Table coverage_table(std::span<const CoverageRow> rows);
// x_m,y_m,detectable
Table detection_table(const DetectionMap& map);

// Reads RSS samples from either a grid CSV (x_m,y_m,rss_db) or a
// single-column CSV headed rss_db. Throws GridParseError.
std::vector<double> load_samples(const std::filesystem::path& path);

}  // namespace mmreflect

#endif  // MMREFLECT_REPORT_HPP_
