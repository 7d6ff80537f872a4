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
#ifndef MMREFLECT_SYNTH_HPP_
#define MMREFLECT_SYNTH_HPP_

#include <cstdint>
#include <vector>

#include "mmreflect/geometry.hpp"
#include "mmreflect/grid.hpp"

namespace mmreflect {

// Parameters of the synthetic RSS model. Amplitudes are modeling knobs that
// reproduce "strong but uneven" reflector coverage; they are not measured.
struct SynthParams {
  double tx_power = 10.0;              // dBm
  double antenna_gain = 30.0;          // dB, tx + rx boresight combined
  double ripple_amplitude = 3.0;       // dB
  double ripple_period = 0.9;          // m of unfolded path length
  double shadowing_sigma = 3.0;        // dB
  double shadowing_correlation = 0.6;  // m
  std::uint64_t seed = 0;

  void validate() const;
};

// Friis free-space path loss 20 log10(4 pi d f / c), dB.
double free_space_path_loss_db(double distance_m, double frequency_hz);

// Deterministic path-length ripple term, dB.
double ripple_db(double path_length_m, const SynthParams& params);

// Zero-mean spatially correlated Gaussian field over the full lattice
// (row-major, masked cells included so the field does not depend on the
// mask). White noise drawn from the seed is smoothed with a Gaussian kernel
// of width shadowing_correlation and normalized per cell so every sample
// has standard deviation shadowing_sigma.
std::vector<double> shadowing_field(const GridSpec& spec,
                                    const SynthParams& params);

// RSS(p) = P_tx + G - FSPL(L(p), f) - loss(material) + ripple(L(p)) + shadow(p)
// with L(p) the unfolded specular path length from the transmitter via the
// panel plane to the cell center. Throws GeometryError naming the first cell
// that has no specular geometry. Output is bit-identical for any `threads`.
RssGrid synthesize_rss_grid(const SceneConfig& scene, const GridSpec& spec,
                            const SynthParams& params, unsigned threads = 1);

}  // namespace mmreflect

#endif  // MMREFLECT_SYNTH_HPP_
