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
#ifndef MMREFLECT_CONFIG_HPP_
#define MMREFLECT_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mmreflect/backoff.hpp"
#include "mmreflect/geometry.hpp"
#include "mmreflect/grid.hpp"
#include "mmreflect/lidar.hpp"
#include "mmreflect/outage.hpp"
#include "mmreflect/synth.hpp"

namespace mmreflect {

// Everything a run needs, as read from one flat `key = value` file.
//
//   # scene
//   corridor_width = 2.5
//   tx_position = -1.7243, -1.25, 1.5
//   panel.width = 0.9
//   panel.material = mirror
//   reflection_loss.foam = 12
//   # synthesizer
//   shadowing_sigma = 3
//   # back-off / outage / scheduler
//   kappa = 1
//   literal_outage_inequality = false
//
// Unknown or repeated keys are errors. Derived defaults follow the keys they
// depend on: the panel hugs the outer corner of corridor_width, the
// transmitter sits 3.8 m up the transmitter leg from the panel, the LiDAR is
// collocated with the transmitter, and the grid sits at rx_height.
struct ExperimentConfig {
  SceneConfig scene = SceneConfig::Default();
  GridSpec grid = GridSpec::Default();
  SynthParams synth;
  BackoffParams backoff;
  OutageRule outage_rule = OutageRule::kBelowAssumed;
  LidarConfig lidar = LidarConfig::FromScene(SceneConfig::Default());
  double quantile = 0.25;

  void validate() const;
};

// The recognized keys, for diagnostics and documentation.
const std::vector<std::string>& config_keys();

ExperimentConfig parse_config(std::string_view text,
                              std::string_view source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace mmreflect

#endif  // MMREFLECT_CONFIG_HPP_
