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
#ifndef MMREFLECT_TESTS_TEST_GRIDS_HPP_
#define MMREFLECT_TESTS_TEST_GRIDS_HPP_

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "mmreflect/geometry.hpp"
#include "mmreflect/grid.hpp"
#include "mmreflect/random.hpp"

namespace mmreflect::testing {

// Row-major values on a full rows x cols lattice at 1 m pitch from (0, 0).
inline RssGrid make_grid(std::size_t rows, std::size_t cols,
                         std::vector<double> values, double pitch = 1.0) {
  GridSpec spec({0.0, 0.0, 1.5}, pitch, rows, cols);
  return RssGrid(spec, std::move(values));
}

// A scene whose panel center sits at (x, y); only used where the panel acts
// as the walk target.
inline SceneConfig scene_with_target(double x, double y) {
  SceneConfig scene = SceneConfig::Default();
  scene.panel.center = {x, y, 1.35};
  return scene;
}

// Random grid with at most rows * cols valid cells and uniform RSS in
// [lo, hi). At least one cell is always kept.
inline RssGrid random_grid(std::uint64_t seed, std::size_t rows,
                           std::size_t cols, double mask_probability = 0.0,
                           double lo = -70.0, double hi = -40.0) {
  SplitMix64 rng(seed);
  std::vector<std::uint8_t> mask(rows * cols, 1);
  for (auto& m : mask) m = rng.uniform01() < mask_probability ? 0 : 1;
  mask[rng.below(mask.size())] = 1;
  std::vector<double> rss(rows * cols);
  for (auto& v : rss) v = lo + (hi - lo) * rng.uniform01();
  GridSpec spec({0.0, 0.0, 1.5}, 0.3, rows, cols, std::move(mask));
  return RssGrid(spec, std::move(rss));
}

}  // namespace mmreflect::testing

#endif  // MMREFLECT_TESTS_TEST_GRIDS_HPP_
