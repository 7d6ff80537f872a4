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
#ifndef MMREFLECT_SCHEDULER_HPP_
#define MMREFLECT_SCHEDULER_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mmreflect/geometry.hpp"
#include "mmreflect/grid.hpp"
#include "mmreflect/random.hpp"
#include "mmreflect/stats.hpp"

namespace mmreflect {

// LiDAR-reported user positions.
struct UserSet {
  std::vector<Point3> positions;

  std::size_t k() const { return positions.size(); }
};

struct ScheduleDecision {
  std::size_t selected_user = 0;
  CellIndex cell;
  double scheduled_rss = 0.0;
  bool in_high_region = false;
};

// Valid cell whose center is nearest to (p.x, p.y); exact midpoints resolve
// to the lower (row, col). Throws BoundsError if p is outside the lattice
// footprint or the nearest cell is masked out.
CellIndex position_to_cell(const GridSpec& spec, const Point3& p);

// Selection on already-mapped cells. In-region users are drawn uniformly,
// after ordering the candidates by (cell, user index) so the draw depends on
// the candidate set rather than on the order users were reported in. With no
// user in the region the strongest cell wins, ties to the lowest index.
ScheduleDecision select_user_from_cells(const RssGrid& grid,
                                        const CellSet& region,
                                        std::span<const CellIndex> cells,
                                        SplitMix64& rng);

// Throws BoundsError identifying the first user out of coverage, and
// ParameterError for an empty user set or empty region.
ScheduleDecision select_user(const RssGrid& grid, const CellSet& region,
                             const UserSet& users, std::uint64_t seed);

struct DiversityOptions {
  // Empty: default_thresholds over the grid's RSS values.
  std::vector<double> thresholds;
  unsigned threads = 1;
};

// Scheduled RSS for each of `instances` random placements of k users over
// the valid cells (uniform, independent, cell centers). Instance i draws from
// SplitMix64(seed ^ i).
std::vector<double> diversity_samples(const RssGrid& grid,
                                      const CellSet& region, std::size_t k,
                                      std::size_t instances,
                                      std::uint64_t seed, unsigned threads = 1);

CcdfCurve diversity_ccdf(const RssGrid& grid, const CellSet& region,
                         std::size_t k, std::size_t instances,
                         std::uint64_t seed,
                         const DiversityOptions& options = {});

}  // namespace mmreflect

#endif  // MMREFLECT_SCHEDULER_HPP_
