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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "socsense/evaluation/metrics.hpp"
#include "socsense/lstm/train.hpp"
#include "socsense/signals/dataset.hpp"

namespace socsense {

/// Shared settings for fitting one channel set end to end.
struct ExperimentConfig {
  std::size_t window = 50;
  std::size_t hidden = 100;
  std::size_t layers = 2;
  TrainConfig train;
  SplitMode split = SplitMode::chronological;
  double train_fraction = 0.8;
  /// Low-pass time constant used when a set needs T_HF/T_LF.
  double tau_s = 3600.0;
  double steady_threshold = kSteadyStateThreshold;
};

struct FittedChannelSet {
  ChannelSet channel_set;
  LstmModel model;
  Normalization normalization;
  TrainResult training;  // model inside equals `model`
  SampleRange train_range;
  SampleRange test_range;
  /// Raw rows [begin, end) read by the training samples.
  std::size_t train_row_begin = 0;
  std::size_t train_row_end = 0;
  std::vector<double> test_times;
  std::vector<double> test_targets;
  std::vector<double> test_predictions;
  MetricReport test_report;
  double final_train_mae = 0.0;
};

/// Returns `matrix` with T_HF/T_LF appended when the set needs them.
SignalMatrix prepare_channels(const SignalMatrix& matrix, const ChannelSet& set, double tau_s);

/// Window -> chronological split -> normalize on the training rows -> train
/// (seeded with `seed`) -> evaluate on the test samples.
FittedChannelSet fit_channel_set(const SignalMatrix& matrix, const ChannelSet& set,
                                 const ExperimentConfig& config, std::uint64_t seed,
                                 const EpochCallback& on_epoch = {});

struct AblationConfig {
  std::vector<ChannelSet> channel_sets;
  ExperimentConfig experiment;
  /// Tag of the reference set; falls back to the first set when absent.
  std::string baseline = "VI";
  /// Extra seeds for the multi-seed mode; the primary report always uses
  /// experiment.train.seed.
  std::vector<std::uint64_t> extra_seeds;
};

struct AblationResult {
  std::string tag;
  MetricReport report;
  double improvement = 0.0;  // (MAE_base - MAE) / MAE_base
  std::size_t best_epoch = 0;
  std::size_t epochs_run = 0;
  /// MAE for the primary seed followed by each extra seed.
  std::vector<double> seed_mae;
  double mae_mean = 0.0;
  double mae_spread = 0.0;  // sample standard deviation; 0 for one seed
  FittedChannelSet fit;
};

struct AblationReport {
  std::string baseline;
  std::vector<AblationResult> results;  // ascending MAE
  std::string config_hash;
};

/// Called before each leg with (tag, seed).
using AblationProgress = std::function<void(const std::string&, std::uint64_t)>;

/// Trains and evaluates every channel set with the same seed. Throws
/// InputError for duplicate tags or channels missing from `matrix`.
AblationReport run_ablation(const SignalMatrix& matrix, const AblationConfig& config,
                            const AblationProgress& progress = {});

nlohmann::json metric_report_to_json(const MetricReport& report);
nlohmann::json ablation_report_to_json(const AblationReport& report);

/// Test-set error trajectories of every set: time_s, soc, err_<tag>...
void write_error_trajectories(const std::filesystem::path& path, const AblationReport& report);

}  // namespace socsense
