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
#include "mmreflect/grid.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "mmreflect/errors.hpp"

namespace mmreflect {
namespace {

constexpr double kDefaultCellSize = 0.3;
// CSV coordinates carry four decimals.
constexpr double kLatticeTolerance = 1e-3;

std::string cell_name(CellIndex c) {
  return "(" + std::to_string(c.row) + ", " + std::to_string(c.col) + ")";
}

double to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& field, double& out) {
  const std::string t = trim(field);
  if (t.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(t, &used);
  } catch (const std::out_of_range&) {
    out = t[0] == '-' ? -HUGE_VAL : HUGE_VAL;
    return true;
  } catch (const std::exception&) {
    return false;
  }
  return used == t.size();
}

}  // namespace

GridSpec::GridSpec(Point3 origin, double cell_size, std::size_t n_rows,
                   std::size_t n_cols)
    : GridSpec(origin, cell_size, n_rows, n_cols,
               std::vector<std::uint8_t>(n_rows * n_cols, 1)) {}

GridSpec::GridSpec(Point3 origin, double cell_size, std::size_t n_rows,
                   std::size_t n_cols, std::vector<std::uint8_t> mask)
    : origin_(origin),
      cell_size_(cell_size),
      n_rows_(n_rows),
      n_cols_(n_cols),
      mask_(std::move(mask)) {
  finish();
}

void GridSpec::finish() {
  if (!origin_.finite()) throw ParameterError("grid origin must be finite");
  if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_)) {
    throw ParameterError("grid cell_size must be > 0");
  }
  if (n_rows_ == 0 || n_cols_ == 0) {
    throw ParameterError("grid must have at least one row and one column");
  }
  if (mask_.size() != n_rows_ * n_cols_) {
    throw ParameterError("grid mask size does not match n_rows * n_cols");
  }
  valid_cells_.clear();
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i] != 0) {
      mask_[i] = 1;
      valid_cells_.push_back(unflat(i));
    }
  }
  if (valid_cells_.empty()) throw ParameterError("no valid cells");
}

GridSpec GridSpec::Default(double rx_height) {
  return GridSpec({0.5, 0.3, rx_height}, kDefaultCellSize, 17, 6);
}

Point3 GridSpec::center(CellIndex c) const {
  return {origin_.x + cell_size_ * static_cast<double>(c.col),
          origin_.y + cell_size_ * static_cast<double>(c.row), origin_.z};
}

void GridSpec::require_valid(CellIndex c) const {
  if (!in_bounds(c)) {
    throw BoundsError("cell " + cell_name(c) + " outside " +
                      std::to_string(n_rows_) + "x" + std::to_string(n_cols_) +
                      " grid");
  }
  if (mask_[flat(c)] == 0) {
    throw BoundsError("cell " + cell_name(c) + " is masked out");
  }
}

bool operator==(const GridSpec& a, const GridSpec& b) {
  return a.origin_ == b.origin_ && a.cell_size_ == b.cell_size_ &&
         a.n_rows_ == b.n_rows_ && a.n_cols_ == b.n_cols_ && a.mask_ == b.mask_;
}

RssGrid::RssGrid(GridSpec spec, std::vector<double> rss)
    : spec_(std::move(spec)), rss_(std::move(rss)) {
  if (rss_.size() != spec_.size()) {
    throw ParameterError("rss vector size does not match the grid lattice");
  }
  min_ = HUGE_VAL;
  max_ = -HUGE_VAL;
  for (std::size_t i = 0; i < rss_.size(); ++i) {
    if (spec_.mask()[i] == 0) {
      rss_[i] = std::nan("");
      continue;
    }
    if (!std::isfinite(rss_[i])) {
      throw ParameterError("non-finite RSS at cell " +
                           cell_name(spec_.unflat(i)));
    }
    min_ = std::min(min_, rss_[i]);
    max_ = std::max(max_, rss_[i]);
  }
}

double RssGrid::rss(CellIndex c) const {
  spec_.require_valid(c);
  return rss_[spec_.flat(c)];
}

std::vector<double> RssGrid::values() const {
  std::vector<double> out;
  out.reserve(spec_.valid_count());
  for (const auto& c : spec_.valid_cells()) out.push_back(at(c));
  return out;
}

CellSet::CellSet(const GridSpec& spec, std::span<const CellIndex> cells)
    : n_rows_(spec.n_rows()),
      n_cols_(spec.n_cols()),
      member_(spec.size(), 0) {
  for (const auto& c : cells) {
    spec.require_valid(c);
    member_[spec.flat(c)] = 1;
  }
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i] != 0) cells_.push_back(spec.unflat(i));
  }
}

RssGrid load_grid(const std::filesystem::path& path,
                  const GridLoadOptions& options) {
  using Kind = GridParseError::Kind;
  std::ifstream in(path);
  if (!in) {
    throw GridParseError(Kind::kMissingFile, 0,
                         path.string() + ": cannot open grid file");
  }
  const std::string where = path.string() + ":";

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (trim(line) != "x_m,y_m,rss_db") {
      throw GridParseError(Kind::kBadHeader, line_no,
                           where + std::to_string(line_no) +
                               ": expected header 'x_m,y_m,rss_db'");
    }
    have_header = true;
    break;
  }
  if (!have_header) {
    throw GridParseError(Kind::kNoValidCells, 0, where + " no valid cells");
  }

  struct Row {
    double x, y, rss;
    std::size_t line;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::stringstream ss(line);
    std::string fx, fy, fr, extra;
    Row r{0, 0, 0, line_no};
    if (!std::getline(ss, fx, ',') || !std::getline(ss, fy, ',') ||
        !std::getline(ss, fr, ',') || std::getline(ss, extra, ',') ||
        !parse_double(fx, r.x) || !parse_double(fy, r.y) ||
        !parse_double(fr, r.rss)) {
      throw GridParseError(Kind::kMalformedRow, line_no,
                           where + std::to_string(line_no) +
                               ": malformed row '" + trim(line) + "'");
    }
    if (!std::isfinite(r.x) || !std::isfinite(r.y)) {
      throw GridParseError(Kind::kMalformedRow, line_no,
                           where + std::to_string(line_no) +
                               ": non-finite coordinate");
    }
    if (!std::isfinite(r.rss)) {
      throw GridParseError(Kind::kNonFinite, line_no,
                           where + std::to_string(line_no) +
                               ": non-finite RSS value");
    }
    rows.push_back(r);
  }
  if (rows.empty()) {
    throw GridParseError(Kind::kNoValidCells, 0, where + " no valid cells");
  }

  double min_x = rows[0].x, min_y = rows[0].y;
  double max_x = min_x, max_y = min_y;
  for (const auto& r : rows) {
    min_x = std::min(min_x, r.x);
    min_y = std::min(min_y, r.y);
    max_x = std::max(max_x, r.x);
    max_y = std::max(max_y, r.y);
  }

  double pitch = options.cell_size;
  if (pitch <= 0.0) {
    pitch = HUGE_VAL;
    for (const auto& r : rows) {
      if (r.x - min_x > kLatticeTolerance) pitch = std::min(pitch, r.x - min_x);
      if (r.y - min_y > kLatticeTolerance) pitch = std::min(pitch, r.y - min_y);
    }
    // The smallest offset from the minimum is one pitch as long as the
    // lattice is consistent; off-lattice rows are caught below.
    if (!std::isfinite(pitch)) pitch = kDefaultCellSize;
  }

  const auto steps = [&](double offset) { return offset / pitch; };
  const std::size_t n_cols =
      static_cast<std::size_t>(std::llround(steps(max_x - min_x))) + 1;
  const std::size_t n_rows =
      static_cast<std::size_t>(std::llround(steps(max_y - min_y))) + 1;

  std::vector<std::uint8_t> mask(n_rows * n_cols, 0);
  std::vector<double> rss(n_rows * n_cols, 0.0);
  for (const auto& r : rows) {
    const double fc = steps(r.x - min_x);
    const double fr = steps(r.y - min_y);
    const double col = std::round(fc);
    const double row = std::round(fr);
    if (std::abs(fc - col) * pitch > kLatticeTolerance ||
        std::abs(fr - row) * pitch > kLatticeTolerance) {
      throw GridParseError(Kind::kOffLattice, r.line,
                           where + std::to_string(r.line) +
                               ": cell center is off the " +
                               std::to_string(pitch) + " m lattice");
    }
    const std::size_t i = static_cast<std::size_t>(row) * n_cols +
                          static_cast<std::size_t>(col);
    if (mask[i] != 0) {
      throw GridParseError(Kind::kDuplicateCell, r.line,
                           where + std::to_string(r.line) +
                               ": duplicate cell at (" + trim(std::to_string(r.x)) +
                               ", " + trim(std::to_string(r.y)) + ")");
    }
    mask[i] = 1;
    rss[i] = r.rss;
  }

  GridSpec spec({min_x, min_y, options.height}, pitch, n_rows, n_cols,
                std::move(mask));
  return RssGrid(std::move(spec), std::move(rss));
}

void save_grid(const RssGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << "x_m,y_m,rss_db\n";
  char buf[128];
  for (const auto& c : grid.spec().valid_cells()) {
    const Point3 p = grid.spec().center(c);
    std::snprintf(buf, sizeof(buf), "%.4f,%.4f,%.4f\n", p.x, p.y, grid.at(c));
    out << buf;
  }
  out.flush();
  if (!out) throw IoError(path.string() + ": write failed");
}

double nearest_neighbor_mean(const RssGrid& grid, CellIndex cell) {
  const GridSpec& spec = grid.spec();
  spec.require_valid(cell);
  double sum = 0.0;
  int count = 0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      // Wraps to a huge index on underflow, which in_bounds rejects.
      const CellIndex n{cell.row + static_cast<std::size_t>(dr),
                        cell.col + static_cast<std::size_t>(dc)};
      if (!spec.valid(n)) continue;
      sum += to_linear(grid.at(n));
      ++count;
    }
  }
  if (count == 0) return grid.at(cell);
  return 10.0 * std::log10(sum / count);
}

CellSet high_rss_region(const RssGrid& grid, double quantile) {
  if (!(quantile > 0.0 && quantile < 1.0)) {
    throw ParameterError("quantile must lie in (0, 1)");
  }
  std::vector<double> sorted = grid.values();
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t n = sorted.size();
  // Guard against q * n landing a hair above an integer (e.g. 9 / 3).
  const double target = std::ceil(quantile * static_cast<double>(n) - 1e-9);
  const std::size_t keep = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(target, 1.0)), 1, n);
  const double cut = sorted[keep - 1];

  std::vector<CellIndex> cells;
  for (const auto& c : grid.spec().valid_cells()) {
    if (grid.at(c) >= cut) cells.push_back(c);
  }
  return CellSet(grid.spec(), cells);
}

}  // namespace mmreflect
