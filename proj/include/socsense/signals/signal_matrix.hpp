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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "socsense/numerics/matrix.hpp"
#include "socsense/signals/channels.hpp"

namespace socsense {

/// Time-aligned multi-channel record: K rows of L channel values plus optional
/// SOC label, cycle index and operating-phase annotation.
class SignalMatrix {
 public:
  SignalMatrix() = default;
  SignalMatrix(std::vector<double> timestamps, std::vector<ChannelId> channels, Matrix values);

  std::size_t steps() const { return timestamps_.size(); }
  std::size_t channel_count() const { return channels_.size(); }

  const std::vector<double>& timestamps() const { return timestamps_; }
  const std::vector<ChannelId>& channels() const { return channels_; }
  const Matrix& values() const { return values_; }

  bool has_channel(ChannelId id) const;
  std::size_t channel_index(ChannelId id) const;  // throws InputError when absent
  std::vector<double> column(ChannelId id) const;

  /// Appends a channel; throws if it exists or the length differs.
  void add_channel(ChannelId id, std::span<const double> values);

  const std::optional<std::vector<double>>& soc() const { return soc_; }
  void set_soc(std::vector<double> soc);

  const std::optional<std::vector<int>>& cycle() const { return cycle_; }
  void set_cycle(std::vector<int> cycle);

  const std::optional<std::vector<std::string>>& phase() const { return phase_; }
  void set_phase(std::vector<std::string> phase);

  /// Rows [begin, end).
  SignalMatrix slice(std::size_t begin, std::size_t end) const;

  /// Seconds between consecutive samples, assuming a uniform grid.
  double sample_period() const;

 private:
  std::vector<double> timestamps_;
  std::vector<ChannelId> channels_;
  Matrix values_;
  std::optional<std::vector<double>> soc_;
  std::optional<std::vector<int>> cycle_;
  std::optional<std::vector<std::string>> phase_;
};

}  // namespace socsense
