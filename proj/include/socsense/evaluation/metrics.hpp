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
#include <optional>
#include <span>
#include <vector>

namespace socsense {

/// Mean absolute error. Throws InputError on empty or mismatched input.
double mae(std::span<const double> y, std::span<const double> y_hat);
/// Root-mean-square error.
double rmse(std::span<const double> y, std::span<const double> y_hat);

inline constexpr double kSteadyStateThreshold = 0.05;

struct SteadyStateResult {
  /// First index of the suffix where |error| < threshold throughout; empty when
  /// the last error is still at or above the threshold.
  std::optional<std::size_t> start;
  std::vector<std::uint8_t> mask;
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t count = 0;

  bool converged() const { return start.has_value(); }
};

/// `errors` are signed estimation errors (prediction - truth).
SteadyStateResult steady_state_filter(std::span<const double> errors,
                                      double threshold = kSteadyStateThreshold);

struct MetricReport {
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t samples = 0;
  SteadyStateResult steady;
  std::vector<double> errors;  // prediction - truth, per sample
};

/// Builds the report and checks RMSE >= MAE, throwing NumericError otherwise.
MetricReport evaluate_predictions(std::span<const double> y, std::span<const double> y_hat,
                                  double threshold = kSteadyStateThreshold);

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either input has no rank variance.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace socsense
