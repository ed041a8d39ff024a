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

#include "socsense/signals/signal_matrix.hpp"

#include <algorithm>

#include "socsense/error.hpp"

namespace socsense {

SignalMatrix::SignalMatrix(std::vector<double> timestamps, std::vector<ChannelId> channels,
                           Matrix values)
    : timestamps_(std::move(timestamps)), channels_(std::move(channels)), values_(std::move(values)) {
  if (values_.rows() != timestamps_.size() || values_.cols() != channels_.size()) {
    throw ShapeError("signal matrix: " + std::to_string(timestamps_.size()) + " timestamps and " +
                     std::to_string(channels_.size()) + " channels but values are " +
                     values_.shape_string());
  }
  for (std::size_t i = 1; i < timestamps_.size(); ++i) {
    if (!(timestamps_[i] > timestamps_[i - 1])) {
      throw InputError("timestamps not strictly increasing at row " + std::to_string(i));
    }
  }
}

bool SignalMatrix::has_channel(ChannelId id) const {
  return std::find(channels_.begin(), channels_.end(), id) != channels_.end();
}

std::size_t SignalMatrix::channel_index(ChannelId id) const {
  auto it = std::find(channels_.begin(), channels_.end(), id);
  if (it == channels_.end()) {
    throw InputError("channel " + std::string(channel_symbol(id)) + " not present (have " +
                     join_symbols(channels_) + ")");
  }
  return static_cast<std::size_t>(it - channels_.begin());
}

std::vector<double> SignalMatrix::column(ChannelId id) const {
  const std::size_t c = channel_index(id);
  std::vector<double> out(steps());
  for (std::size_t r = 0; r < steps(); ++r) out[r] = values_(r, c);
  return out;
}

void SignalMatrix::add_channel(ChannelId id, std::span<const double> values) {
  if (has_channel(id)) {
    throw InputError("channel " + std::string(channel_symbol(id)) + " already present");
  }
  if (values.size() != steps()) {
    throw ShapeError("add_channel: " + std::to_string(values.size()) + " values for " +
                     std::to_string(steps()) + " rows");
  }
  const std::size_t old_cols = channel_count();
  Matrix grown(steps(), old_cols + 1);
  for (std::size_t r = 0; r < steps(); ++r) {
    for (std::size_t c = 0; c < old_cols; ++c) grown(r, c) = values_(r, c);
    grown(r, old_cols) = values[r];
  }
  values_ = std::move(grown);
  channels_.push_back(id);
}

void SignalMatrix::set_soc(std::vector<double> soc) {
  if (soc.size() != steps()) throw ShapeError("soc label length differs from row count");
  soc_ = std::move(soc);
}

void SignalMatrix::set_cycle(std::vector<int> cycle) {
  if (cycle.size() != steps()) throw ShapeError("cycle column length differs from row count");
  cycle_ = std::move(cycle);
}

void SignalMatrix::set_phase(std::vector<std::string> phase) {
  if (phase.size() != steps()) throw ShapeError("phase column length differs from row count");
  phase_ = std::move(phase);
}

SignalMatrix SignalMatrix::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > steps()) throw ShapeError("slice out of range");
  const std::size_t n = end - begin;
  Matrix v(n, channel_count());
  for (std::size_t r = 0; r < n; ++r) {
    std::copy_n(values_.row(begin + r).begin(), channel_count(), v.row(r).begin());
  }
  SignalMatrix out({timestamps_.begin() + begin, timestamps_.begin() + end}, channels_,
                   std::move(v));
  if (soc_) out.set_soc({soc_->begin() + begin, soc_->begin() + end});
  if (cycle_) out.set_cycle({cycle_->begin() + begin, cycle_->begin() + end});
  if (phase_) out.set_phase({phase_->begin() + begin, phase_->begin() + end});
  return out;
}

double SignalMatrix::sample_period() const {
  if (steps() < 2) return 1.0;
  return (timestamps_.back() - timestamps_.front()) / static_cast<double>(steps() - 1);
}

}  // namespace socsense
