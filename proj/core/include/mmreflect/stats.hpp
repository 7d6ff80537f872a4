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
#ifndef MMREFLECT_STATS_HPP_
#define MMREFLECT_STATS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace mmreflect {

// Empirical Pr(X > threshold) on a strictly increasing threshold list.
struct CcdfCurve {
  std::vector<double> thresholds;
  std::vector<double> prob;
  std::size_t n_samples = 0;
};

// prob[j] = #{samples > thresholds[j]} / n. Ties do not exceed.
// Throws ParameterError on empty samples or non-increasing thresholds.
CcdfCurve ccdf(std::span<const double> samples,
               std::span<const double> thresholds);

// `count` evenly spaced thresholds over [min - 1, max + 1].
std::vector<double> default_thresholds(std::span<const double> samples,
                                       std::size_t count = 81);

// True iff a.prob[j] >= b.prob[j] - slack at every threshold. Throws
// ConsistencyError when the threshold lists differ.
bool dominates(const CcdfCurve& a, const CcdfCurve& b, double slack);

// Spearman rank correlation with average ranks for ties. Returns NaN when
// either input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace mmreflect

#endif  // MMREFLECT_STATS_HPP_
