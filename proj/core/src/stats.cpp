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
#include "mmreflect/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mmreflect/errors.hpp"

namespace mmreflect {
namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

CcdfCurve ccdf(std::span<const double> samples,
               std::span<const double> thresholds) {
  if (samples.empty()) throw ParameterError("ccdf needs at least one sample");
  for (std::size_t j = 1; j < thresholds.size(); ++j) {
    if (!(thresholds[j] > thresholds[j - 1])) {
      throw ParameterError("ccdf thresholds must be strictly increasing");
    }
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  CcdfCurve out;
  out.thresholds.assign(thresholds.begin(), thresholds.end());
  out.n_samples = sorted.size();
  out.prob.reserve(thresholds.size());
  for (const double t : thresholds) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
    out.prob.push_back(static_cast<double>(above) / n);
  }
  return out;
}

std::vector<double> default_thresholds(std::span<const double> samples,
                                       std::size_t count) {
  if (samples.empty()) throw ParameterError("no samples for threshold sweep");
  if (count < 2) throw ParameterError("threshold sweep needs >= 2 points");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it - 1.0;
  const double hi = *hi_it + 1.0;
  std::vector<double> t(count);
  for (std::size_t j = 0; j < count; ++j) {
    t[j] = lo + (hi - lo) * static_cast<double>(j) /
                    static_cast<double>(count - 1);
  }
  return t;
}

bool dominates(const CcdfCurve& a, const CcdfCurve& b, double slack) {
  if (a.thresholds != b.thresholds) {
    throw ConsistencyError("CCDF curves use different thresholds");
  }
  for (std::size_t j = 0; j < a.prob.size(); ++j) {
    if (a.prob[j] < b.prob[j] - slack) return false;
  }
  return true;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ParameterError("spearman inputs differ in length");
  }
  if (x.size() < 2) return std::nan("");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nan("");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace mmreflect
