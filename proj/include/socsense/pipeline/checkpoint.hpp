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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "socsense/lstm/model.hpp"
#include "socsense/sensitivity/partition.hpp"
#include "socsense/signals/dataset.hpp"
#include "socsense/signals/signal_matrix.hpp"

namespace socsense {

/// Everything needed to re-apply a trained model to new raw data.
struct Checkpoint {
  LstmModel model;
  std::string channel_tag;
  std::size_t window = 0;
  double sample_period_s = 1.0;
  double tau_s = 3600.0;
  Normalization normalization;
  std::vector<IntervalPartition> partitions;  // training-range partitions, model channel order
  double final_train_mae = 0.0;
  std::string config_hash;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
  static Checkpoint from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static Checkpoint load(const std::filesystem::path& path);
};

nlohmann::json normalization_to_json(const Normalization& map);
Normalization normalization_from_json(const nlohmann::json& j);

/// Partitions of each channel over raw rows [row_begin, row_end).
std::vector<IntervalPartition> training_partitions(const SignalMatrix& matrix,
                                                   const std::vector<ChannelId>& channels,
                                                   std::size_t row_begin, std::size_t row_end,
                                                   std::size_t intervals = kDefaultIntervals);

}  // namespace socsense
