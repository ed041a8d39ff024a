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
#include <cstdint>
#include <functional>
#include <vector>

#include "socsense/lstm/backward.hpp"
#include "socsense/lstm/model.hpp"
#include "socsense/numerics/adam.hpp"
#include "socsense/signals/dataset.hpp"

namespace socsense {

struct TrainConfig {
  std::size_t max_epochs = 6000;
  /// Epochs without validation improvement before stopping; 0 disables.
  std::size_t patience = 100;
  AdamConfig adam;
  /// Global gradient-norm clip; 0 disables.
  double clip_norm = 5.0;
  std::size_t batch_size = 64;
  /// Chronological tail of the training samples held out for early stopping.
  double validation_fraction = 0.1;
  std::uint64_t seed = 42;

  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;       // 1-based
  double train_loss = 0.0;     // mean mini-batch MSE over the epoch
  double validation_loss = 0.0;  // equals train_loss when no validation split
};

struct TrainResult {
  LstmModel model;  // parameters of the best validation epoch
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
  bool stopped_early = false;
};

/// Called after every epoch; return false to stop.
using EpochCallback = std::function<bool(const EpochRecord&)>;

/// Adam over shuffled mini-batches. Throws NumericError naming the epoch when
/// the loss becomes non-finite.
TrainResult train(const LstmModel& initial, const WindowedDataset& data,
                  const TrainConfig& config, const EpochCallback& on_epoch = {});

SampleBatch make_batch(const WindowedDataset& data, std::span<const std::size_t> indices);

/// Mean squared error of the model over all samples.
double dataset_loss(const LstmModel& model, const WindowedDataset& data);

}  // namespace socsense
