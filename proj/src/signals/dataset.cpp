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

#include "socsense/signals/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "socsense/error.hpp"

namespace socsense {

double ChannelScaling::apply(double raw) const {
  if (degenerate) return 0.0;
  return 2.0 * (raw - min) / (max - min) - 1.0;
}

const ChannelScaling& Normalization::for_channel(ChannelId id) const {
  for (const auto& c : channels) {
    if (c.channel == id) return c;
  }
  throw InputError("no normalization stored for channel " + std::string(channel_symbol(id)));
}

void Normalization::apply_row(std::span<double> row) const {
  if (row.size() != channels.size()) throw ShapeError("normalization row width mismatch");
  for (std::size_t c = 0; c < row.size(); ++c) row[c] = channels[c].apply(row[c]);
}

std::span<const double> WindowedDataset::window(std::size_t i) const {
  const std::size_t l = channels_.size();
  const std::size_t first = end_rows_[i] + 1 - window_;
  return {rows_->data().data() + first * l, window_ * l};
}

std::optional<int> WindowedDataset::cycle(std::size_t i) const {
  if (!cycles_) return std::nullopt;
  return (*cycles_)[end_rows_[i]];
}

WindowedDataset WindowedDataset::subset(SampleRange range) const {
  if (range.begin > range.end || range.end > size()) throw ShapeError("subset out of range");
  WindowedDataset out = *this;
  out.end_rows_.assign(end_rows_.begin() + range.begin, end_rows_.begin() + range.end);
  out.targets_.assign(targets_.begin() + range.begin, targets_.begin() + range.end);
  return out;
}

WindowedDataset WindowedDataset::select(std::span<const std::size_t> indices) const {
  WindowedDataset out = *this;
  out.end_rows_.clear();
  out.targets_.clear();
  for (std::size_t i : indices) {
    if (i >= size()) throw ShapeError("select index out of range");
    out.end_rows_.push_back(end_rows_[i]);
    out.targets_.push_back(targets_[i]);
  }
  return out;
}

WindowedDataset make_windows(const SignalMatrix& matrix, const ChannelSet& channel_set,
                             std::size_t window) {
  if (window == 0) throw InputError("window length must be at least 1");
  if (!matrix.soc()) throw InputError("make_windows: matrix has no soc label");
  const std::size_t k = matrix.steps();
  if (k < window) {
    throw InputError("make_windows: " + std::to_string(k) + " steps is fewer than window " +
                     std::to_string(window));
  }
  std::vector<std::size_t> cols;
  for (ChannelId id : channel_set.members) cols.push_back(matrix.channel_index(id));

  auto rows = std::make_shared<Matrix>(k, cols.size());
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) (*rows)(r, c) = matrix.values()(r, cols[c]);
  }

  WindowedDataset ds;
  ds.rows_ = std::move(rows);
  ds.times_ = std::make_shared<std::vector<double>>(matrix.timestamps());
  if (matrix.cycle()) ds.cycles_ = std::make_shared<std::vector<int>>(*matrix.cycle());
  ds.channels_ = channel_set.members;
  ds.window_ = window;
  const auto& soc = *matrix.soc();
  for (std::size_t end = window - 1; end < k; ++end) {
    ds.end_rows_.push_back(end);
    ds.targets_.push_back(soc[end]);
  }
  return ds;
}

WindowedDataset apply_normalization(const WindowedDataset& dataset, const Normalization& map) {
  if (map.channels.size() != dataset.channels_.size()) {
    throw ShapeError("normalization has " + std::to_string(map.channels.size()) +
                     " channels, dataset has " + std::to_string(dataset.channels_.size()));
  }
  for (std::size_t c = 0; c < map.channels.size(); ++c) {
    if (map.channels[c].channel != dataset.channels_[c]) {
      throw InputError("normalization channel order differs from dataset channels");
    }
  }
  auto rows = std::make_shared<Matrix>(*dataset.rows_);
  for (std::size_t r = 0; r < rows->rows(); ++r) map.apply_row(rows->row(r));
  WindowedDataset out = dataset;
  out.rows_ = std::move(rows);
  out.normalization_ = map;
  return out;
}

WindowedDataset normalize(const WindowedDataset& dataset, SampleRange training) {
  if (training.size() == 0 || training.end > dataset.size()) {
    throw InputError("normalize: training range must be a non-empty range of samples");
  }
  const std::size_t first_row = dataset.end_rows_[training.begin] + 1 - dataset.window_;
  const std::size_t last_row = dataset.end_rows_[training.end - 1];
  Normalization map;
  for (std::size_t c = 0; c < dataset.channels_.size(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t r = first_row; r <= last_row; ++r) {
      lo = std::min(lo, (*dataset.rows_)(r, c));
      hi = std::max(hi, (*dataset.rows_)(r, c));
    }
    map.channels.push_back({dataset.channels_[c], lo, hi, !(hi > lo)});
  }
  return apply_normalization(dataset, map);
}

std::pair<SampleRange, SampleRange> split_ranges(const WindowedDataset& dataset, SplitMode mode,
                                                 double train_fraction) {
  const std::size_t n = dataset.size();
  if (n < 5) {
    throw InputError("split_train_test: need at least 5 samples, have " + std::to_string(n));
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InputError("train fraction must lie in (0, 1)");
  }
  const double exact = train_fraction * static_cast<double>(n);
  std::size_t cut = static_cast<std::size_t>(std::floor(exact + 0.5));
  if (mode == SplitMode::by_cycle) {
    if (!dataset.cycle(0)) throw InputError("by-cycle split requires a cycle column");
    std::size_t best = cut;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < n; ++i) {
      if (*dataset.cycle(i) != *dataset.cycle(i - 1)) {
        const double d = std::abs(static_cast<double>(i) - exact);
        if (d < best_dist) {
          best_dist = d;
          best = i;
        }
      }
    }
    cut = best;
  }
  cut = std::clamp<std::size_t>(cut, 1, n - 1);
  return {{0, cut}, {cut, n}};
}

std::pair<WindowedDataset, WindowedDataset> split_train_test(const WindowedDataset& dataset,
                                                             SplitMode mode,
                                                             double train_fraction) {
  auto [train, test] = split_ranges(dataset, mode, train_fraction);
  return {dataset.subset(train), dataset.subset(test)};
}

}  // namespace socsense
