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
#ifndef MMREFLECT_GRID_HPP_
#define MMREFLECT_GRID_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mmreflect/geometry.hpp"

namespace mmreflect {

struct CellIndex {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

// Rectangular lattice of receiver positions. Rows run along +y, columns
// along +x; cell (0, 0) is centered at `origin`. `mask` flags the cells that
// carry a measurement and is stored row-major.
class GridSpec {
 public:
  GridSpec() = default;
  // Full mask.
  GridSpec(Point3 origin, double cell_size, std::size_t n_rows,
           std::size_t n_cols);
  GridSpec(Point3 origin, double cell_size, std::size_t n_rows,
           std::size_t n_cols, std::vector<std::uint8_t> mask);

  // 17 x 6 cells at 0.3 m pitch in the NLoS leg: 102 receiver positions.
  static GridSpec Default(double rx_height = 1.5);

  const Point3& origin() const { return origin_; }
  double cell_size() const { return cell_size_; }
  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }
  std::size_t size() const { return n_rows_ * n_cols_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  bool in_bounds(CellIndex c) const { return c.row < n_rows_ && c.col < n_cols_; }
  bool valid(CellIndex c) const { return in_bounds(c) && mask_[flat(c)] != 0; }
  std::size_t flat(CellIndex c) const { return c.row * n_cols_ + c.col; }
  CellIndex unflat(std::size_t i) const { return {i / n_cols_, i % n_cols_}; }
  Point3 center(CellIndex c) const;

  // Valid cells in row-major order.
  const std::vector<CellIndex>& valid_cells() const { return valid_cells_; }
  std::size_t valid_count() const { return valid_cells_.size(); }

  // Throws BoundsError naming the cell unless valid(c).
  void require_valid(CellIndex c) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b);

 private:
  void finish();

  Point3 origin_;
  double cell_size_ = 0.3;
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::uint8_t> mask_;
  std::vector<CellIndex> valid_cells_;
};

// Per-cell RSS map in dB. Masked-out cells hold no value.
class RssGrid {
 public:
  // `rss` is indexed like the lattice (row-major, size n_rows * n_cols);
  // entries of masked-out cells are ignored. Throws ParameterError if a valid
  // cell holds a non-finite value.
  RssGrid(GridSpec spec, std::vector<double> rss);

  const GridSpec& spec() const { return spec_; }
  double rss(CellIndex c) const;
  // Unchecked lookup for hot loops; c must be valid.
  double at(CellIndex c) const { return rss_[spec_.flat(c)]; }
  // Values of the valid cells in row-major order.
  std::vector<double> values() const;
  double min_rss() const { return min_; }
  double max_rss() const { return max_; }

 private:
  GridSpec spec_;
  std::vector<double> rss_;
  double min_ = 0.0;
  double max_ = 0.0;
};

// A subset of valid cells of one GridSpec with O(1) membership.
class CellSet {
 public:
  CellSet() = default;
  CellSet(const GridSpec& spec, std::span<const CellIndex> cells);

  bool contains(CellIndex c) const {
    return c.row < n_rows_ && c.col < n_cols_ &&
           member_[c.row * n_cols_ + c.col] != 0;
  }
  const std::vector<CellIndex>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::uint8_t> member_;
  std::vector<CellIndex> cells_;
};

struct GridLoadOptions {
  // Lattice pitch; 0 infers it from the smallest coordinate spacing (and
  // falls back to 0.3 m for single-row, single-column files).
  double cell_size = 0.0;
  // Height assigned to cell centers; the CSV carries only x and y.
  double height = 1.5;
};

// Grid CSV: header `x_m,y_m,rss_db`, one row per valid cell.
RssGrid load_grid(const std::filesystem::path& path,
                  const GridLoadOptions& options = {});
void save_grid(const RssGrid& grid, const std::filesystem::path& path);

// Mean RSS of the valid 8-connected neighbors of `cell`, averaged in linear
// power and returned in dB. Falls back to the cell's own RSS if it has no
// valid neighbor.
double nearest_neighbor_mean(const RssGrid& grid, CellIndex cell);

// Valid cells in the top `quantile` fraction by RSS; every cell tied with the
// cut value is included. Requires 0 < quantile < 1.
CellSet high_rss_region(const RssGrid& grid, double quantile);

}  // namespace mmreflect

#endif  // MMREFLECT_GRID_HPP_
