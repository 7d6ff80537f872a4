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
#ifndef MMREFLECT_BACKOFF_HPP_
#define MMREFLECT_BACKOFF_HPP_

#include <vector>

#include "mmreflect/grid.hpp"

namespace mmreflect {

struct BackoffParams {
  double kappa = 1.0;
  double delta_max = 10.0;  // dB

  void validate() const;
};

// Location-dependent back-off: delta(d) = min(kappa / g(d), delta_max) dB,
// where g(d) is the nearest-neighbor mean power of d divided by the grid's
// strongest cell power, so g lies in (0, 1]. Weak neighborhoods get the
// largest margin.
class BackoffMap {
 public:
  BackoffMap(GridSpec spec, std::vector<double> delta, double kappa,
             double delta_max);

  const GridSpec& spec() const { return spec_; }
  double kappa() const { return kappa_; }
  double delta_max() const { return delta_max_; }
  double delta(CellIndex c) const;
  double at(CellIndex c) const { return delta_[spec_.flat(c)]; }

 private:
  GridSpec spec_;
  std::vector<double> delta_;
  double kappa_;
  double delta_max_;
};

// g(d) in (0, 1].
double normalized_neighborhood_power(const RssGrid& grid, CellIndex cell);

// Throws ParameterError for kappa < 0 or delta_max <= 0.
BackoffMap compute_backoff_map(const RssGrid& grid, double kappa,
                               double delta_max);
inline BackoffMap compute_backoff_map(const RssGrid& grid,
                                      const BackoffParams& params) {
  return compute_backoff_map(grid, params.kappa, params.delta_max);
}

// The RSS the transmitter assumes at `cell`: rss - delta. Throws
// ConsistencyError if grid and map were built over different specs.
double effective_rss(const RssGrid& grid, const BackoffMap& map,
                     CellIndex cell);

}  // namespace mmreflect

#endif  // MMREFLECT_BACKOFF_HPP_
