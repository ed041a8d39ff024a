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

#include "socsense/lstm/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "socsense/error.hpp"
#include "socsense/lstm/backward.hpp"
#include "socsense/lstm/forward.hpp"
#include "socsense/numerics/rng.hpp"
#include "socsense/simd/kernels.hpp"

namespace socsense {

void TrainConfig::validate() const {
  if (max_epochs < 1) throw InputError("max_epochs must be at least 1");
  if (batch_size < 1) throw InputError("batch_size must be at least 1");
  if (!(adam.learning_rate > 0.0)) throw InputError("learning_rate must be positive");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0)) throw InputError("beta1 must lie in [0, 1)");
  if (!(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) throw InputError("beta2 must lie in [0, 1)");
  if (!(adam.epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (!(clip_norm >= 0.0)) throw InputError("clip_norm must be non-negative");
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0)) {
    throw InputError("validation_fraction must lie in [0, 1)");
  }
}

SampleBatch make_batch(const WindowedDataset& data, std::span<const std::size_t> indices) {
  SampleBatch batch;
  batch.steps = data.window_length();
  batch.windows.reserve(indices.size());
  batch.targets.reserve(indices.size());
  for (std::size_t i : indices) {
    batch.windows.push_back(data.window(i));
    batch.targets.push_back(data.target(i));
  }
  return batch;
}

double dataset_loss(const LstmModel& model, const WindowedDataset& data) {
  const auto predictions = predict_all(model, data);
  return mse_loss(predictions, data.targets());
}

TrainResult train(const LstmModel& initial, const WindowedDataset& data,
                  const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  if (data.empty()) throw InputError("train: empty dataset");
  if (data.channels() != initial.channels()) {
    throw InputError("train: dataset channels [" + join_symbols(data.channels()) +
                     "] differ from model channels [" + join_symbols(initial.channels()) + "]");
  }

  const std::size_t n = data.size();
  std::size_t n_val = static_cast<std::size_t>(std::floor(config.validation_fraction *
                                                          static_cast<double>(n)));
  if (n_val >= n) n_val = 0;
  const std::size_t n_train = n - n_val;
  const WindowedDataset validation = data.subset({n_train, n});

  TrainResult result;
  LstmModel model = initial;
  AdamState adam = AdamState::zeros(model.parameter_count(), config.adam);
  Rng rng(config.seed);
  std::vector<std::size_t> order(n_train);
  std::iota(order.begin(), order.end(), std::size_t{0});
  BpttWorkspace workspace(model, data.window_length());
  std::vector<double> gradient(model.parameter_count());
  const auto& k = simd::active();

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_params(model.parameters().begin(), model.parameters().end());
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double sum = 0.0;
    for (std::size_t start = 0; start < n_train; start += config.batch_size) {
      const std::size_t end = std::min(n_train, start + config.batch_size);
      const SampleBatch batch = make_batch(data, {order.data() + start, end - start});
      double loss = 0.0;
      try {
        loss = workspace.compute(model, batch, gradient);
        if (!std::isfinite(loss)) throw NumericError("non-finite loss");
        if (config.clip_norm > 0.0) {
          const double norm = std::sqrt(k.sum_squares(gradient.data(), gradient.size()));
          if (!std::isfinite(norm)) throw NumericError("non-finite gradient norm");
          if (norm > config.clip_norm) {
            k.scale(config.clip_norm / norm, gradient.data(), gradient.size());
          }
        }
        adam_update_inplace(model.parameters(), gradient, adam, model.blocks());
      } catch (const NumericError& e) {
        throw NumericError("training diverged at epoch " + std::to_string(epoch) + ": " +
                           e.what());
      }
      sum += loss * static_cast<double>(end - start);
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = sum / static_cast<double>(n_train);
    record.validation_loss = n_val > 0 ? dataset_loss(model, validation) : record.train_loss;
    if (!std::isfinite(record.train_loss) || !std::isfinite(record.validation_loss)) {
      throw NumericError("training diverged at epoch " + std::to_string(epoch) +
                         ": non-finite loss");
    }
    result.history.push_back(record);

    if (record.validation_loss < best) {
      best = record.validation_loss;
      result.best_epoch = epoch;
      std::copy(model.parameters().begin(), model.parameters().end(), best_params.begin());
      since_best = 0;
    } else {
      ++since_best;
    }
    if (on_epoch && !on_epoch(record)) break;
    if (config.patience > 0 && since_best >= config.patience) {
      result.stopped_early = true;
      break;
    }
  }

  std::copy(best_params.begin(), best_params.end(), model.parameters().begin());
  result.model = std::move(model);
  return result;
}

}  // namespace socsense
