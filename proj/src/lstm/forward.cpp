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

#include "socsense/lstm/forward.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "socsense/error.hpp"
#include "socsense/simd/kernels.hpp"

namespace socsense {

SequenceOutput forward_sequence(const LstmModel& model, const Window& window) {
  if (!std::equal(window.channels.begin(), window.channels.end(), model.channels().begin(),
                  model.channels().end())) {
    throw InputError("window channels [" + join_symbols(window.channels) +
                     "] do not match model channels [" + join_symbols(model.channels()) + "]");
  }
  const std::size_t l = model.input_dim();
  if (window.steps == 0 || window.values.size() != window.steps * l) {
    throw ShapeError("window has " + std::to_string(window.values.size()) + " values for " +
                     std::to_string(window.steps) + " steps of " + std::to_string(l) +
                     " channels");
  }
  SequenceOutput out;
  std::vector<double> inputs(window.values.begin(), window.values.end());
  std::size_t width = l;
  for (std::size_t layer = 0; layer < model.layer_count(); ++layer) {
    const auto p = model.layer(layer);
    LayerState state = LayerState::zeros(model.hidden());
    std::vector<double> next(window.steps * model.hidden());
    for (std::size_t t = 0; t < window.steps; ++t) {
      state = cell_step(p, {inputs.data() + t * width, width}, state).state;
      std::copy(state.hidden.begin(), state.hidden.end(), next.begin() + t * model.hidden());
    }
    out.final_states.push_back(state);
    inputs = std::move(next);
    width = model.hidden();
  }
  const auto& top = out.final_states.back().hidden;
  out.prediction = model.projection_bias() +
                   simd::active().dot(model.projection_weights().data(), top.data(), top.size());
  return out;
}

Predictor::Predictor(const LstmModel& model) : model_(&model) {
  gates_.resize(kGateCount * model.hidden());
  cell_.resize(model.hidden());
}

double Predictor::operator()(std::span<const double> window, std::size_t steps) {
  const LstmModel& m = *model_;
  const std::size_t h = m.hidden();
  assert(window.size() == steps * m.input_dim());
  const auto& k = simd::active();
  sequence_a_.assign(steps * h, 0.0);
  sequence_b_.resize(steps * h);

  const double* in = window.data();
  std::size_t width = m.input_dim();
  double* out = sequence_a_.data();
  for (std::size_t layer = 0; layer < m.layer_count(); ++layer) {
    const auto p = m.layer(layer);
    std::fill(cell_.begin(), cell_.end(), 0.0);
    for (std::size_t t = 0; t < steps; ++t) {
      double* z = gates_.data();
      std::copy(p.bias, p.bias + kGateCount * h, z);
      k.gemv_acc(p.w_input, kGateCount * h, width, in + t * width, z);
      if (t > 0) k.gemv_acc(p.w_recurrent, kGateCount * h, h, out + (t - 1) * h, z);
      // Per gate, like cell_step, so both paths round identically.
      k.sigmoid(z, h);
      k.sigmoid(z + h, h);
      k.tanh(z + 2 * h, h);
      k.sigmoid(z + 3 * h, h);
      double* ht = out + t * h;
      for (std::size_t j = 0; j < h; ++j) {
        cell_[j] = z[h + j] * cell_[j] + z[j] * z[2 * h + j];
        ht[j] = cell_[j];
      }
      k.tanh(ht, h);
      for (std::size_t j = 0; j < h; ++j) ht[j] *= z[3 * h + j];
    }
    in = out;
    width = h;
    out = (out == sequence_a_.data()) ? sequence_b_.data() : sequence_a_.data();
  }
  const double* top = in + (steps - 1) * h;
  return m.projection_bias() + k.dot(m.projection_weights().data(), top, h);
}

}  // namespace socsense
