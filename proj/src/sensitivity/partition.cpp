// Copyright 2026 The socsense Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "socsense/sensitivity/partition.hpp"

#include <algorithm>
#include <cmath>

#include "socsense/error.hpp"

namespace socsense {

std::size_t IntervalPartition::interval_of(double x) const {
  const std::size_t h = bounds.size() - 1;
  const double width = (bounds.back() - bounds.front()) / static_cast<double>(h);
  const double pos = std::floor((x - bounds.front()) / width);
  if (!(pos > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(pos), h - 1);
}

IntervalPartition build_partition(ChannelId channel, std::span<const double> values,
                                  std::size_t intervals) {
  if (values.empty()) {
    throw InputError("build_partition: empty series for channel " +
                     std::string(channel_symbol(channel)));
  }
  if (intervals < 1) throw InputError("build_partition: need at least one interval");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double width = hi > lo ? (hi - lo) / static_cast<double>(intervals) : 1.0;

  IntervalPartition p;
  p.channel = channel;
  p.bounds.resize(intervals + 1);
  for (std::size_t h = 0; h <= intervals; ++h) p.bounds[h] = lo + static_cast<double>(h) * width;
  if (hi > lo) p.bounds.back() = hi;

  std::vector<double> sums(intervals, 0.0);
  std::vector<std::size_t> counts(intervals, 0);
  for (double v : values) {
    const std::size_t h = p.interval_of(v);
    sums[h] += v;
    ++counts[h];
  }
  const double total = static_cast<double>(values.size());
  p.means.resize(intervals);
  p.probabilities.resize(intervals);
  for (std::size_t h = 0; h < intervals; ++h) {
    p.probabilities[h] = static_cast<double>(counts[h]) / total;
    p.means[h] = counts[h] > 0 ? sums[h] / static_cast<double>(counts[h])
                               : 0.5 * (p.bounds[h] + p.bounds[h + 1]);
    p.means[h] = std::clamp(p.means[h], p.bounds[h], p.bounds[h + 1]);
  }
  return p;
}

}  // namespace socsense
