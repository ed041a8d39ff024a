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

#include "socsense/lstm/model.hpp"

namespace socsense {

/// Mean of squared differences. Throws on empty or unequal inputs.
double mse_loss(std::span<const double> predictions, std::span<const double> targets);

/// Windows (steps x input_dim, row-major) with one target each.
struct SampleBatch {
  std::vector<std::span<const double>> windows;
  std::vector<double> targets;
  std::size_t steps = 0;

  std::size_t size() const { return windows.size(); }
};

struct LossGradient {
  double loss = 0.0;
  std::vector<double> gradient;  // same layout as LstmModel::parameters()
};

/// Exact gradient of the batch MSE with respect to every parameter, by
/// backpropagation through time over the full window.
LossGradient backward(const LstmModel& model, const SampleBatch& batch);

/// Buffers reused across calls; `compute` writes into `gradient` and returns the loss.
class BpttWorkspace {
 public:
  explicit BpttWorkspace(const LstmModel& model, std::size_t steps);
  double compute(const LstmModel& model, const SampleBatch& batch, std::span<double> gradient);

 private:
  std::size_t steps_;
  std::size_t hidden_;
  std::size_t layers_;
  // Per layer, per step: gates (4H: i, f, c~, o), cell C, tanh(C), hidden h.
  std::vector<std::vector<double>> gates_;
  std::vector<std::vector<double>> cell_;
  std::vector<std::vector<double>> cell_tanh_;
  std::vector<std::vector<double>> hidden_out_;
  std::vector<double> dh_external_;  // S x H gradient arriving from the layer above
  std::vector<double> dh_lower_;     // S x H gradient passed to the layer below
  std::vector<double> dz_;
  std::vector<double> dh_next_;
  std::vector<double> dc_next_;
};

}  // namespace socsense
