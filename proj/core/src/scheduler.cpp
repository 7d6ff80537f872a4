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
#include "mmreflect/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mmreflect/errors.hpp"
#include "mmreflect/parallel.hpp"

namespace mmreflect {
namespace {

constexpr double kMidpointTolerance = 1e-9;

// Nearest lattice index along one axis, rounding exact midpoints down.
long nearest_index(double offset, double pitch) {
  const double t = offset / pitch;
  const double fl = std::floor(t);
  if (std::abs(t - (fl + 0.5)) <= kMidpointTolerance) {
    return static_cast<long>(fl);
  }
  return static_cast<long>(std::lround(t));
}

}  // namespace

CellIndex position_to_cell(const GridSpec& spec, const Point3& p) {
  if (!p.finite()) throw BoundsError("user position is not finite");
  const double half = 0.5 * spec.cell_size() + kMidpointTolerance;
  const Point3& o = spec.origin();
  const double max_x =
      o.x + spec.cell_size() * static_cast<double>(spec.n_cols() - 1);
  const double max_y =
      o.y + spec.cell_size() * static_cast<double>(spec.n_rows() - 1);
  if (p.x < o.x - half || p.x > max_x + half || p.y < o.y - half ||
      p.y > max_y + half) {
    throw BoundsError("position outside the grid footprint");
  }
  const long col = std::clamp<long>(nearest_index(p.x - o.x, spec.cell_size()),
                                    0, static_cast<long>(spec.n_cols()) - 1);
  const long row = std::clamp<long>(nearest_index(p.y - o.y, spec.cell_size()),
                                    0, static_cast<long>(spec.n_rows()) - 1);
  const CellIndex c{static_cast<std::size_t>(row), static_cast<std::size_t>(col)};
  if (!spec.valid(c)) {
    throw BoundsError("position maps to masked-out cell (" +
                      std::to_string(c.row) + ", " + std::to_string(c.col) +
                      ")");
  }
  return c;
}

ScheduleDecision select_user_from_cells(const RssGrid& grid,
                                        const CellSet& region,
                                        std::span<const CellIndex> cells,
                                        SplitMix64& rng) {
  if (cells.empty()) throw ParameterError("user set is empty");
  if (region.empty()) throw ParameterError("high-RSS region is empty");

  std::vector<std::pair<CellIndex, std::size_t>> candidates;
  for (std::size_t u = 0; u < cells.size(); ++u) {
    if (region.contains(cells[u])) candidates.emplace_back(cells[u], u);
  }

  ScheduleDecision d;
  if (!candidates.empty()) {
    std::sort(candidates.begin(), candidates.end());
    const auto& pick = candidates.size() == 1
                           ? candidates.front()
                           : candidates[rng.below(candidates.size())];
    d.selected_user = pick.second;
    d.in_high_region = true;
  } else {
    std::size_t best = 0;
    for (std::size_t u = 1; u < cells.size(); ++u) {
      if (grid.at(cells[u]) > grid.at(cells[best])) best = u;
    }
    d.selected_user = best;
    d.in_high_region = false;
  }
  d.cell = cells[d.selected_user];
  d.scheduled_rss = grid.at(d.cell);
  return d;
}

ScheduleDecision select_user(const RssGrid& grid, const CellSet& region,
                             const UserSet& users, std::uint64_t seed) {
  if (users.positions.empty()) throw ParameterError("user set is empty");
  std::vector<CellIndex> cells;
  cells.reserve(users.k());
  for (std::size_t u = 0; u < users.k(); ++u) {
    try {
      cells.push_back(position_to_cell(grid.spec(), users.positions[u]));
    } catch (const BoundsError& e) {
      throw BoundsError("user " + std::to_string(u) + " out of coverage: " +
                        e.what());
    }
  }
  SplitMix64 rng(seed);
  return select_user_from_cells(grid, region, cells, rng);
}

std::vector<double> diversity_samples(const RssGrid& grid,
                                      const CellSet& region, std::size_t k,
                                      std::size_t instances,
                                      std::uint64_t seed, unsigned threads) {
  if (k == 0) throw ParameterError("k must be >= 1");
  if (instances == 0) throw ParameterError("instances must be >= 1");
  if (region.empty()) throw ParameterError("high-RSS region is empty");
  const auto& valid = grid.spec().valid_cells();
  std::vector<double> out(instances);
  parallel_for(instances, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<CellIndex> cells(k);
    for (std::size_t i = begin; i < end; ++i) {
      SplitMix64 rng = derive_stream(seed, i);
      for (auto& c : cells) c = valid[rng.below(valid.size())];
      out[i] = select_user_from_cells(grid, region, cells, rng).scheduled_rss;
    }
  });
  return out;
}

CcdfCurve diversity_ccdf(const RssGrid& grid, const CellSet& region,
                         std::size_t k, std::size_t instances,
                         std::uint64_t seed, const DiversityOptions& options) {
  const auto samples =
      diversity_samples(grid, region, k, instances, seed, options.threads);
  if (options.thresholds.empty()) {
    const auto values = grid.values();
    return ccdf(samples, default_thresholds(values));
  }
  return ccdf(samples, options.thresholds);
}

}  // namespace mmreflect
