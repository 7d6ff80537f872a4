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
#include "mmreflect/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmreflect/errors.hpp"
#include "mmreflect/parallel.hpp"

namespace mmreflect {
namespace {

// Closest valid neighbors of `from` that are strictly closer to target than
// `from` itself. Empty when the walk must stop.
std::vector<CellIndex> closer_neighbors(const GridSpec& spec,
                                        const Point3& target, CellIndex from) {
  const double here = horizontal_distance(spec.center(from), target);
  double best = std::numeric_limits<double>::infinity();
  std::vector<CellIndex> ties;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const CellIndex n{from.row + static_cast<std::size_t>(dr),
                        from.col + static_cast<std::size_t>(dc)};
      if (!spec.valid(n)) continue;
      const double d = horizontal_distance(spec.center(n), target);
      if (d >= here - kPlaneTolerance) continue;
      if (d < best - kPlaneTolerance) {
        best = d;
        ties.clear();
        ties.push_back(n);
      } else if (d <= best + kPlaneTolerance) {
        ties.push_back(n);
      }
    }
  }
  return ties;
}

bool outage_from(double assumed, double min_later, OutageRule rule) {
  return rule == OutageRule::kBelowAssumed ? min_later < assumed
                                           : assumed < min_later;
}

void require_same_spec(const RssGrid& grid, const BackoffMap& map) {
  if (!(grid.spec() == map.spec())) {
    throw ConsistencyError("back-off map was built over a different grid");
  }
}

double enumerate(const RssGrid& grid, const Point3& target, CellIndex at,
                 std::size_t remaining, double assumed, double min_later,
                 OutageRule rule) {
  if (remaining == 0) {
    return std::isfinite(min_later) && outage_from(assumed, min_later, rule)
               ? 1.0
               : 0.0;
  }
  const auto next = closer_neighbors(grid.spec(), target, at);
  if (next.empty()) {
    return enumerate(grid, target, at, 0, assumed, min_later, rule);
  }
  double p = 0.0;
  for (const auto& n : next) {
    p += enumerate(grid, target, n, remaining - 1, assumed,
                   std::min(min_later, grid.at(n)), rule);
  }
  return p / static_cast<double>(next.size());
}

}  // namespace

Trajectory walk_towards_panel(const GridSpec& spec, const Point3& target,
                              CellIndex start, std::size_t n_steps,
                              SplitMix64& rng) {
  spec.require_valid(start);
  Trajectory traj;
  traj.step = spec.cell_size();
  traj.cells.push_back(start);
  for (std::size_t s = 0; s < n_steps; ++s) {
    const auto next = closer_neighbors(spec, target, traj.cells.back());
    if (next.empty()) break;
    traj.cells.push_back(next.size() == 1 ? next.front()
                                          : next[rng.below(next.size())]);
  }
  return traj;
}

Trajectory generate_trajectory(const RssGrid& grid, const SceneConfig& scene,
                               CellIndex start, std::size_t n_steps,
                               std::uint64_t seed) {
  SplitMix64 rng(seed);
  return walk_towards_panel(grid.spec(), scene.panel.center, start, n_steps,
                            rng);
}

bool outage_event(const RssGrid& grid, const BackoffMap& map,
                  const Trajectory& traj, OutageRule rule) {
  require_same_spec(grid, map);
  if (traj.cells.empty()) throw ParameterError("empty trajectory");
  if (traj.cells.size() == 1) return false;
  const double assumed = effective_rss(grid, map, traj.cells.front());
  double min_later = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < traj.cells.size(); ++i) {
    min_later = std::min(min_later, grid.rss(traj.cells[i]));
  }
  return outage_from(assumed, min_later, rule);
}

OutageCurve estimate_outage(const RssGrid& grid, const BackoffMap& map,
                            const SceneConfig& scene,
                            std::span<const double> displacements,
                            std::size_t trials, std::uint64_t seed,
                            const OutageOptions& options) {
  require_same_spec(grid, map);
  if (trials == 0) throw ParameterError("trials must be >= 1");
  const GridSpec& spec = grid.spec();

  std::vector<std::size_t> steps;
  steps.reserve(displacements.size());
  for (std::size_t j = 0; j < displacements.size(); ++j) {
    const double d = displacements[j];
    if (!std::isfinite(d) || d < 0.0) {
      throw ParameterError("displacement must be a finite value >= 0");
    }
    if (j > 0 && !(d > displacements[j - 1])) {
      throw ParameterError("displacements must be strictly increasing");
    }
    steps.push_back(static_cast<std::size_t>(std::llround(d / spec.cell_size())));
  }
  const std::size_t max_steps =
      steps.empty() ? 0 : *std::max_element(steps.begin(), steps.end());

  const auto& cells = spec.valid_cells();
  const std::size_t n_disp = steps.size();
  // counts[t * n_disp + j]: trial t had an outage at displacement j.
  std::vector<std::uint8_t> hits(trials * n_disp, 0);
  parallel_for(trials, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      SplitMix64 rng = derive_stream(seed, t);
      const CellIndex start = cells[rng.below(cells.size())];
      const Trajectory full =
          walk_towards_panel(spec, scene.panel.center, start, max_steps, rng);
      const double assumed = grid.at(start) - map.at(start);
      // prefix_min[i]: min RSS over cells 1..i of the walk.
      double running = std::numeric_limits<double>::infinity();
      std::vector<double> prefix_min(full.cells.size(), running);
      for (std::size_t i = 1; i < full.cells.size(); ++i) {
        running = std::min(running, grid.at(full.cells[i]));
        prefix_min[i] = running;
      }
      for (std::size_t j = 0; j < n_disp; ++j) {
        const std::size_t last = std::min(steps[j], full.cells.size() - 1);
        if (last == 0) continue;
        hits[t * n_disp + j] =
            outage_from(assumed, prefix_min[last], options.rule) ? 1 : 0;
      }
    }
  });

  OutageCurve curve;
  curve.displacements.assign(displacements.begin(), displacements.end());
  curve.p_out.assign(n_disp, 0.0);
  curve.trials = trials;
  curve.kappa = map.kappa();
  curve.seed = seed;
  for (std::size_t j = 0; j < n_disp; ++j) {
    std::size_t count = 0;
    for (std::size_t t = 0; t < trials; ++t) count += hits[t * n_disp + j];
    curve.p_out[j] = static_cast<double>(count) / static_cast<double>(trials);
  }
  return curve;
}

double brute_force_outage(const RssGrid& grid, const BackoffMap& map,
                          const SceneConfig& scene, std::size_t n_steps,
                          OutageRule rule) {
  require_same_spec(grid, map);
  const auto& cells = grid.spec().valid_cells();
  double total = 0.0;
  for (const auto& start : cells) {
    const double assumed = grid.at(start) - map.at(start);
    total += enumerate(grid, scene.panel.center, start, n_steps, assumed,
                       std::numeric_limits<double>::infinity(), rule);
  }
  return total / static_cast<double>(cells.size());
}

}  // namespace mmreflect
