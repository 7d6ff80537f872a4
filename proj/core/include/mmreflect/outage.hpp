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
#ifndef MMREFLECT_OUTAGE_HPP_
#define MMREFLECT_OUTAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mmreflect/backoff.hpp"
#include "mmreflect/geometry.hpp"
#include "mmreflect/grid.hpp"
#include "mmreflect/random.hpp"

namespace mmreflect {

// User walk towards the reflector: cells[0] is the link-setup position d_0.
struct Trajectory {
  std::vector<CellIndex> cells;
  double step = 0.0;  // m, the grid pitch

  double displacement() const {
    return cells.empty() ? 0.0
                         : static_cast<double>(cells.size() - 1) * step;
  }
};

// Which inequality defines an outage.
//  kBelowAssumed: min_{i>=1} rss(d_i) < rss(d_0) - delta(d_0), i.e. the
//    channel dips below the level provisioned at d_0.
//  kLiteral: rss(d_0) - delta(d_0) < min_{i>=1} rss(d_i), the inequality
//    exactly as printed in the source formula; kept for comparison.
enum class OutageRule { kBelowAssumed, kLiteral };

struct OutageCurve {
  std::vector<double> displacements;  // m
  std::vector<double> p_out;
  std::size_t trials = 0;
  double kappa = 0.0;
  std::uint64_t seed = 0;
};

// Greedy walk of up to n_steps cells. Each step moves to the valid
// 8-neighbor with the smallest horizontal distance to the panel center;
// neighbors within kPlaneTolerance of that distance are tied and one is drawn
// uniformly from `rng`. The walk stops early when no neighbor is strictly
// closer. The rng is consumed only on ties.
Trajectory walk_towards_panel(const GridSpec& spec, const Point3& target,
                              CellIndex start, std::size_t n_steps,
                              SplitMix64& rng);

Trajectory generate_trajectory(const RssGrid& grid, const SceneConfig& scene,
                               CellIndex start, std::size_t n_steps,
                               std::uint64_t seed);

// Single-cell trajectories never produce an outage.
bool outage_event(const RssGrid& grid, const BackoffMap& map,
                  const Trajectory& traj,
                  OutageRule rule = OutageRule::kBelowAssumed);

struct OutageOptions {
  OutageRule rule = OutageRule::kBelowAssumed;
  unsigned threads = 1;
};

// Monte Carlo outage versus displacement. Trial i draws from
// SplitMix64(seed ^ i): first a uniform start cell, then walk tie-breaks.
// Every displacement reuses the same trial streams, so the trajectory for a
// shorter displacement is a prefix of the longer one and the same start cells
// are shared across calls with different back-off maps. Displacements must be
// finite, >= 0 and strictly increasing; each maps to round(D / pitch) steps.
OutageCurve estimate_outage(const RssGrid& grid, const BackoffMap& map,
                            const SceneConfig& scene,
                            std::span<const double> displacements,
                            std::size_t trials, std::uint64_t seed,
                            const OutageOptions& options = {});

// Exact outage probability: uniform over start cells, uniform over each tie
// branch of the walk.
double brute_force_outage(const RssGrid& grid, const BackoffMap& map,
                          const SceneConfig& scene, std::size_t n_steps,
                          OutageRule rule = OutageRule::kBelowAssumed);

}  // namespace mmreflect

#endif  // MMREFLECT_OUTAGE_HPP_
