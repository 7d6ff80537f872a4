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
#include "mmreflect/lidar.hpp"

#include <cmath>

#include "mmreflect/errors.hpp"
#include "mmreflect/parallel.hpp"

namespace mmreflect {

LidarConfig LidarConfig::FromScene(const SceneConfig& scene) {
  LidarConfig lidar;
  lidar.position = scene.lidar_position;
  return lidar;
}

void LidarConfig::validate() const {
  if (!position.finite()) throw ConfigError("lidar position must be finite");
  if (!(user_height > 0.0) || !std::isfinite(user_height)) {
    throw ConfigError("user_height must be > 0");
  }
  if (samples_per_user < 2) throw ConfigError("samples_per_user must be >= 2");
}

std::vector<double> user_sample_heights(const LidarConfig& lidar) {
  lidar.validate();
  std::vector<double> z(lidar.samples_per_user);
  const double last = static_cast<double>(lidar.samples_per_user - 1);
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = lidar.user_height * static_cast<double>(i) / last;
  }
  return z;
}

bool cell_detectable(const SceneConfig& scene, const LidarConfig& lidar,
                     const GridSpec& spec, CellIndex cell) {
  spec.require_valid(cell);
  const Point3 image = image_point(lidar.position, scene.panel);
  const Point3 foot = spec.center(cell);
  for (const double z : user_sample_heights(lidar)) {
    const Point3 q{foot.x, foot.y, z};
    if (q == image) continue;
    if (segment_intersects_panel(image, q, scene.panel)) return true;
  }
  return false;
}

DetectionMap coverage_fraction(const SceneConfig& scene,
                               const LidarConfig& lidar, const GridSpec& spec,
                               unsigned threads) {
  lidar.validate();
  DetectionMap map{spec, std::vector<std::uint8_t>(spec.size(), 0), 0.0};
  const auto& cells = spec.valid_cells();
  parallel_for(cells.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      map.detectable[spec.flat(cells[i])] =
          cell_detectable(scene, lidar, spec, cells[i]) ? 1 : 0;
    }
  });
  std::size_t seen = 0;
  for (const auto& c : cells) seen += map.at(c) ? 1 : 0;
  map.coverage = static_cast<double>(seen) / static_cast<double>(cells.size());
  return map;
}

}  // namespace mmreflect
