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
#include <span>
#include <vector>

#include "socsense/lstm/cell.hpp"
#include "socsense/lstm/model.hpp"

namespace socsense {

/// A window of `steps` rows by channels.size() columns, row-major.
struct Window {
  std::span<const double> values;
  std::size_t steps = 0;
  std::span<const ChannelId> channels;
};

struct SequenceOutput {
  double prediction = 0.0;
  std::vector<LayerState> final_states;  // one per layer
};

/// Runs every layer over the whole window from zero state and projects the
/// top layer's final hidden vector. Throws InputError when the window's
/// channels differ from the model's.
SequenceOutput forward_sequence(const LstmModel& model, const Window& window);

/// Reusable buffers for repeated forward passes without channel checks.
class Predictor {
 public:
  explicit Predictor(const LstmModel& model);

  /// `window` is steps x input_dim, row-major, already normalized.
  double operator()(std::span<const double> window, std::size_t steps);

  const LstmModel& model() const { return *model_; }

 private:
  const LstmModel* model_;
  std::vector<double> gates_;
  std::vector<double> cell_;
  std::vector<double> sequence_a_;
  std::vector<double> sequence_b_;
};

/// Predictions for every sample of a dataset-like source.
template <class Dataset>
std::vector<double> predict_all(const LstmModel& model, const Dataset& data) {
  Predictor predict(model);
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = predict(data.window(i), data.window_length());
  return out;
}

}  // namespace socsense
