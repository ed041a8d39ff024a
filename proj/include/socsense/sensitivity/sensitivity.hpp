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

#include "socsense/lstm/forward.hpp"
#include "socsense/numerics/matrix.hpp"
#include "socsense/sensitivity/partition.hpp"
#include "socsense/signals/dataset.hpp"
#include "socsense/signals/signal_matrix.hpp"

namespace socsense {

/// Evaluates the time-varying sensitivity index
///
///   phi_l(k) = sum_h P_{l,h} * | f(window) - f(window with channel l held at mean_{l,h}) |
///
/// where f is the model, the window covers steps k-S+1..k and the
/// substitution spans the whole window. Partitions are in raw units; the
/// substituted value goes through the model's normalization first. Intervals
/// with P = 0 contribute nothing and are skipped.
class SensitivityAnalyzer {
 public:
  SensitivityAnalyzer(const LstmModel& model, const Normalization& normalization,
                      std::span<const IntervalPartition> partitions);

  /// phi for one channel. `window` is normalized, steps x model.input_dim().
  double at(std::span<const double> window, std::size_t steps, ChannelId channel);
  /// phi for every model channel, in model channel order; `baseline` receives f(window).
  std::vector<double> all(std::span<const double> window, std::size_t steps,
                          double* baseline = nullptr);

 private:
  double channel_phi(std::span<const double> window, std::size_t steps, std::size_t column,
                     double baseline);

  const LstmModel* model_;
  Predictor predict_;
  std::vector<const IntervalPartition*> partitions_;  // per model channel
  std::vector<std::vector<double>> substitutes_;       // normalized interval means
  std::vector<double> scratch_;
};

/// Free-function form of SensitivityAnalyzer::at.
double sensitivity_at(const LstmModel& model, std::span<const double> window, std::size_t steps,
                      std::span<const IntervalPartition> partitions,
                      const Normalization& normalization, ChannelId channel);

struct SensitivityProfile {
  std::vector<ChannelId> channels;
  Matrix values;                   // channels x evaluated steps
  std::size_t window = 0;
  std::vector<std::size_t> steps;  // 1-based k of each column
  std::vector<double> times;
  std::optional<std::vector<std::string>> phases;
  std::vector<double> predictions;  // f(window) for each column
  std::vector<IntervalPartition> partitions;

  std::size_t size() const { return steps.size(); }
};

/// phi for every model channel at every k in [S, K] of a raw (unnormalized)
/// signal matrix. Carries the matrix's phase column when present.
SensitivityProfile profile(const LstmModel& model, const SignalMatrix& matrix,
                           std::span<const IntervalPartition> partitions,
                           const Normalization& normalization, std::size_t window);

struct ChannelSummary {
  ChannelId channel{};
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct SensitivitySummary {
  std::vector<ChannelSummary> channels;  // profile order
  std::vector<ChannelId> ranking;        // by mean, largest first
};

/// Linear-interpolation quantile (h = (n-1)p) of unsorted data.
double quantile(std::vector<double> values, double p);

SensitivitySummary summarize(const SensitivityProfile& profile);

/// Mean absolute change of the prediction when zero-mean Gaussian noise of
/// standard deviation `sigma` (normalized units) is added to `channel` over
/// every window of `data`.
double perturbation_degradation(const LstmModel& model, const WindowedDataset& data,
                                ChannelId channel, double sigma, std::uint64_t seed);

}  // namespace socsense
