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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "socsense/signals/channels.hpp"

namespace socsense {

/// Equal-width intervals over the training range of one channel, with the
/// mean of the training values inside each interval and the fraction of
/// training values that fall there.
struct IntervalPartition {
  ChannelId channel{};
  std::vector<double> bounds;         // H + 1, strictly ascending
  std::vector<double> means;          // H; midpoint for empty intervals
  std::vector<double> probabilities;  // H; sums to 1

  std::size_t intervals() const { return means.size(); }
  /// Interval index of x; values outside the bounds clamp to the end intervals.
  std::size_t interval_of(double x) const;
};

inline constexpr std::size_t kDefaultIntervals = 10;

/// Partitions `values` (raw units) into `intervals` equal-width bins over
/// [min, max]. A constant series gets unit-width bins starting at its value,
/// so everything lands in the first one.
IntervalPartition build_partition(ChannelId channel, std::span<const double> values,
                                  std::size_t intervals = kDefaultIntervals);

}  // namespace socsense
