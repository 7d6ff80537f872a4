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
#include "mmreflect/synth.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mmreflect/errors.hpp"
#include "mmreflect/parallel.hpp"
#include "mmreflect/random.hpp"

namespace mmreflect {
namespace {

constexpr double kSpeedOfLight = 299792458.0;
// Stream tag for the shadowing noise; keeps it apart from trial streams.
constexpr std::uint64_t kShadowStream = 0x5348414457ULL;
// Kernel support in standard deviations.
constexpr double kKernelSupport = 3.0;

}  // namespace

void SynthParams::validate() const {
  if (!std::isfinite(tx_power) || !std::isfinite(antenna_gain) ||
      !std::isfinite(ripple_amplitude)) {
    throw ParameterError("synth power terms must be finite");
  }
  if (!(ripple_period > 0.0)) throw ParameterError("ripple_period must be > 0");
  if (!(shadowing_sigma >= 0.0) || !std::isfinite(shadowing_sigma)) {
    throw ParameterError("shadowing_sigma must be >= 0");
  }
  if (!(shadowing_correlation > 0.0) || !std::isfinite(shadowing_correlation)) {
    throw ParameterError("shadowing_correlation must be > 0");
  }
}

double free_space_path_loss_db(double distance_m, double frequency_hz) {
  if (!(distance_m > 0.0) || !(frequency_hz > 0.0)) {
    throw ParameterError("path loss needs positive distance and frequency");
  }
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz /
                           kSpeedOfLight);
}

double ripple_db(double path_length_m, const SynthParams& params) {
  return params.ripple_amplitude *
         std::sin(2.0 * std::numbers::pi * path_length_m / params.ripple_period);
}

std::vector<double> shadowing_field(const GridSpec& spec,
                                    const SynthParams& params) {
  params.validate();
  const std::size_t rows = spec.n_rows();
  const std::size_t cols = spec.n_cols();
  std::vector<double> field(rows * cols, 0.0);
  if (params.shadowing_sigma == 0.0) return field;

  SplitMix64 rng = derive_stream(params.seed, kShadowStream);
  std::vector<double> noise(rows * cols);
  for (auto& n : noise) n = rng.gaussian();

  const double width = params.shadowing_correlation / spec.cell_size();
  const auto radius = static_cast<long>(std::ceil(kKernelSupport * width));
  std::vector<double> taps(2 * static_cast<std::size_t>(radius) + 1);
  for (long k = -radius; k <= radius; ++k) {
    const double r = static_cast<double>(k) / width;
    taps[static_cast<std::size_t>(k + radius)] = std::exp(-0.5 * r * r);
  }

  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double sum = 0.0;
      double energy = 0.0;
      for (long dr = -radius; dr <= radius; ++dr) {
        const long rr = static_cast<long>(r) + dr;
        if (rr < 0 || rr >= static_cast<long>(rows)) continue;
        const double wr = taps[static_cast<std::size_t>(dr + radius)];
        for (long dc = -radius; dc <= radius; ++dc) {
          const long cc = static_cast<long>(c) + dc;
          if (cc < 0 || cc >= static_cast<long>(cols)) continue;
          const double w = wr * taps[static_cast<std::size_t>(dc + radius)];
          sum += w * noise[static_cast<std::size_t>(rr) * cols +
                           static_cast<std::size_t>(cc)];
          energy += w * w;
        }
      }
      field[r * cols + c] = params.shadowing_sigma * sum / std::sqrt(energy);
    }
  }
  return field;
}

RssGrid synthesize_rss_grid(const SceneConfig& scene, const GridSpec& spec,
                            const SynthParams& params, unsigned threads) {
  params.validate();
  for (const auto& c : spec.valid_cells()) {
    const Point3 p = spec.center(c);
    const double st = signed_distance(scene.tx_position, scene.panel);
    const double sp = signed_distance(p, scene.panel);
    if ((st > kPlaneTolerance && sp < -kPlaneTolerance) ||
        (st < -kPlaneTolerance && sp > kPlaneTolerance)) {
      throw GeometryError("cell (" + std::to_string(c.row) + ", " +
                          std::to_string(c.col) +
                          ") has no specular path via the panel");
    }
  }

  const std::vector<double> shadow = shadowing_field(spec, params);
  const double fixed = params.tx_power + params.antenna_gain -
                       scene.reflection_loss();
  std::vector<double> rss(spec.size(), 0.0);
  const auto& cells = spec.valid_cells();
  parallel_for(cells.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const CellIndex c = cells[i];
      const double length =
          path_length_via_panel(scene.tx_position, spec.center(c), scene.panel);
      rss[spec.flat(c)] =
          fixed - free_space_path_loss_db(length, scene.carrier_frequency) +
          ripple_db(length, params) + shadow[spec.flat(c)];
    }
  });
  return RssGrid(spec, std::move(rss));
}

}  // namespace mmreflect
