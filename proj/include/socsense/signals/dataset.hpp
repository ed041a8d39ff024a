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
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "socsense/numerics/matrix.hpp"
#include "socsense/signals/channels.hpp"
#include "socsense/signals/signal_matrix.hpp"

namespace socsense {

/// Min-max map of one channel onto [-1, 1], fitted on training data.
struct ChannelScaling {
  ChannelId channel{};
  double min = 0.0;
  double max = 0.0;
  bool degenerate = false;  // constant over the fitting range; maps to 0

  double apply(double raw) const;
};

struct Normalization {
  std::vector<ChannelScaling> channels;  // same order as the dataset channels

  bool empty() const { return channels.empty(); }
  const ChannelScaling& for_channel(ChannelId id) const;
  /// Normalizes one row in place; row order must match `channels`.
  void apply_row(std::span<double> row) const;
};

/// Half-open range of sample indices.
struct SampleRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

/// Sliding-window samples over a shared row store. Sample i is the window of
/// S consecutive rows ending at row end_row(i), with target soc(end_row(i)).
class WindowedDataset {
 public:
  WindowedDataset() = default;

  std::size_t size() const { return end_rows_.size(); }
  bool empty() const { return end_rows_.empty(); }
  std::size_t window_length() const { return window_; }
  const std::vector<ChannelId>& channels() const { return channels_; }
  const Normalization& normalization() const { return normalization_; }

  /// S x L row-major block of the window for sample i.
  std::span<const double> window(std::size_t i) const;
  double target(std::size_t i) const { return targets_[i]; }
  std::size_t end_row(std::size_t i) const { return end_rows_[i]; }
  double time(std::size_t i) const { return (*times_)[end_rows_[i]]; }
  std::span<const double> targets() const { return targets_; }

  /// Samples [range.begin, range.end) sharing the same row store.
  WindowedDataset subset(SampleRange range) const;
  /// Samples at the given indices, in that order.
  WindowedDataset select(std::span<const std::size_t> indices) const;

  /// Cycle index of each sample's target row, when the source had one.
  std::optional<int> cycle(std::size_t i) const;

  friend WindowedDataset make_windows(const SignalMatrix&, const ChannelSet&, std::size_t);
  friend WindowedDataset normalize(const WindowedDataset&, SampleRange);
  friend WindowedDataset apply_normalization(const WindowedDataset&, const Normalization&);

 private:
  std::shared_ptr<const Matrix> rows_;
  std::shared_ptr<const std::vector<double>> times_;
  std::shared_ptr<const std::vector<int>> cycles_;
  std::vector<ChannelId> channels_;
  std::size_t window_ = 0;
  std::vector<std::size_t> end_rows_;
  std::vector<double> targets_;
  Normalization normalization_;
};

/// One sample per k in [S, K] (1-based), restricted to the set's channels in
/// set order. Requires SOC labels and K >= S.
WindowedDataset make_windows(const SignalMatrix& matrix, const ChannelSet& channel_set,
                             std::size_t window);

/// Fits min-max scaling on the rows covered by `training` and applies it to
/// every row; values outside the training range extrapolate linearly.
WindowedDataset normalize(const WindowedDataset& dataset, SampleRange training);

/// Applies a previously fitted map (e.g. from a checkpoint).
WindowedDataset apply_normalization(const WindowedDataset& dataset, const Normalization& map);

enum class SplitMode { chronological, by_cycle };

/// Index ranges of the 80/20 split. Chronological: first round(0.8 n) samples
/// train. By-cycle: the boundary moves to the cycle start closest to 80%.
std::pair<SampleRange, SampleRange> split_ranges(const WindowedDataset& dataset,
                                                 SplitMode mode = SplitMode::chronological,
                                                 double train_fraction = 0.8);

std::pair<WindowedDataset, WindowedDataset> split_train_test(
    const WindowedDataset& dataset, SplitMode mode = SplitMode::chronological,
    double train_fraction = 0.8);

}  // namespace socsense
