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
#ifndef MMREFLECT_LIDAR_HPP_
#define MMREFLECT_LIDAR_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mmreflect/geometry.hpp"
#include "mmreflect/grid.hpp"

namespace mmreflect {

struct LidarConfig {
  Point3 position;
  double user_height = 1.8;
  std::size_t samples_per_user = 16;

  // LiDAR at the scene's lidar_position with default user model.
  static LidarConfig FromScene(const SceneConfig& scene);
  void validate() const;
};

struct DetectionMap {
  GridSpec spec;
  std::vector<std::uint8_t> detectable;  // lattice-indexed, 0 for masked cells
  double coverage = 0.0;

  bool at(CellIndex c) const { return detectable[spec.flat(c)] != 0; }
};

// Heights of the sample points on the user's body, ground to user_height.
std::vector<double> user_sample_heights(const LidarConfig& lidar);

// A user standing at the cell center is seen through the mirror iff the
// straight segment from the LiDAR's mirror image to at least one body sample
// passes through the finite panel rectangle.
bool cell_detectable(const SceneConfig& scene, const LidarConfig& lidar,
                     const GridSpec& spec, CellIndex cell);

// Fraction of valid cells with a detectable user.
DetectionMap coverage_fraction(const SceneConfig& scene,
                               const LidarConfig& lidar, const GridSpec& spec,
                               unsigned threads = 1);

}  // namespace mmreflect

#endif  // MMREFLECT_LIDAR_HPP_
