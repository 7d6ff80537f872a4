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
#include "mmreflect/backoff.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mmreflect/errors.hpp"

namespace mmreflect {

void BackoffParams::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw ParameterError("kappa must be a finite value >= 0");
  }
  if (!(delta_max > 0.0) || !std::isfinite(delta_max)) {
    throw ParameterError("delta_max must be > 0");
  }
}

BackoffMap::BackoffMap(GridSpec spec, std::vector<double> delta, double kappa,
                       double delta_max)
    : spec_(std::move(spec)),
      delta_(std::move(delta)),
      kappa_(kappa),
      delta_max_(delta_max) {
  if (delta_.size() != spec_.size()) {
    throw ParameterError("back-off vector size does not match the lattice");
  }
}

double BackoffMap::delta(CellIndex c) const {
  spec_.require_valid(c);
  return delta_[spec_.flat(c)];
}

double normalized_neighborhood_power(const RssGrid& grid, CellIndex cell) {
  // Ratio taken in dB first so very low powers do not underflow.
  const double rel_db = nearest_neighbor_mean(grid, cell) - grid.max_rss();
  return std::min(1.0, std::pow(10.0, rel_db / 10.0));
}

BackoffMap compute_backoff_map(const RssGrid& grid, double kappa,
                               double delta_max) {
  BackoffParams{kappa, delta_max}.validate();
  const GridSpec& spec = grid.spec();
  std::vector<double> delta(spec.size(), std::nan(""));
  for (const auto& c : spec.valid_cells()) {
    const double g = normalized_neighborhood_power(grid, c);
    delta[spec.flat(c)] = kappa == 0.0 ? 0.0 : std::min(kappa / g, delta_max);
  }
  return BackoffMap(spec, std::move(delta), kappa, delta_max);
}

double effective_rss(const RssGrid& grid, const BackoffMap& map,
                     CellIndex cell) {
  if (!(grid.spec() == map.spec())) {
    throw ConsistencyError("back-off map was built over a different grid");
  }
  return grid.rss(cell) - map.at(cell);
}

}  // namespace mmreflect
