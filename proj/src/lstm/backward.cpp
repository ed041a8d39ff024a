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

#include "socsense/lstm/backward.hpp"

#include <algorithm>
#include <cmath>

#include "socsense/error.hpp"
#include "socsense/numerics/matrix.hpp"
#include "socsense/simd/kernels.hpp"

namespace socsense {

double mse_loss(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.empty()) throw InputError("mse_loss: empty input");
  if (predictions.size() != targets.size()) {
    throw ShapeError("mse_loss: " + std::to_string(predictions.size()) + " predictions vs " +
                     std::to_string(targets.size()) + " targets");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double e = predictions[i] - targets[i];
    s += e * e;
  }
  return s / static_cast<double>(predictions.size());
}

BpttWorkspace::BpttWorkspace(const LstmModel& model, std::size_t steps)
    : steps_(steps), hidden_(model.hidden()), layers_(model.layer_count()) {
  const std::size_t h = hidden_;
  gates_.assign(layers_, std::vector<double>(steps * kGateCount * h));
  cell_.assign(layers_, std::vector<double>(steps * h));
  cell_tanh_.assign(layers_, std::vector<double>(steps * h));
  hidden_out_.assign(layers_, std::vector<double>(steps * h));
  dh_external_.resize(steps * h);
  dh_lower_.resize(steps * h);
  dz_.resize(kGateCount * h);
  dh_next_.resize(h);
  dc_next_.resize(h);
}

namespace {

void require_finite(std::span<const double> v, std::size_t sample, std::size_t layer,
                    std::size_t step, const char* what) {
  if (!all_finite(v)) {
    throw NumericError(std::string("backward: non-finite ") + what + " at step " +
                       std::to_string(step + 1) + " (layer " + std::to_string(layer + 1) +
                       ", sample " + std::to_string(sample) + ")");
  }
}

}  // namespace

double BpttWorkspace::compute(const LstmModel& model, const SampleBatch& batch,
                              std::span<double> gradient) {
  if (batch.size() == 0) throw InputError("backward: empty batch");
  if (batch.targets.size() != batch.size()) throw ShapeError("backward: targets/windows mismatch");
  if (batch.steps != steps_ || model.hidden() != hidden_ || model.layer_count() != layers_) {
    throw ShapeError("backward: workspace was sized for a different model or window length");
  }
  if (gradient.size() != model.parameter_count()) throw ShapeError("backward: gradient size");

  const auto& k = simd::active();
  const std::size_t h = hidden_;
  const std::size_t g4 = kGateCount * h;
  const std::size_t s_len = steps_;
  const double n = static_cast<double>(batch.size());

  std::fill(gradient.begin(), gradient.end(), 0.0);
  // Gradient blocks sit at the same offsets as the model's parameters.
  auto grad_ptr = [&](const double* model_ptr) {
    return gradient.data() + (model_ptr - model.parameters().data());
  };

  double loss = 0.0;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const auto window = batch.windows[b];
    if (window.size() != s_len * model.input_dim()) {
      throw ShapeError("backward: window " + std::to_string(b) + " has " +
                       std::to_string(window.size()) + " values");
    }

    // Forward with caches.
    for (std::size_t layer = 0; layer < layers_; ++layer) {
      const auto p = model.layer(layer);
      const double* in = layer == 0 ? window.data() : hidden_out_[layer - 1].data();
      const std::size_t width = p.input_dim;
      double* gates = gates_[layer].data();
      double* c = cell_[layer].data();
      double* tc = cell_tanh_[layer].data();
      double* hs = hidden_out_[layer].data();
      for (std::size_t t = 0; t < s_len; ++t) {
        double* z = gates + t * g4;
        std::copy(p.bias, p.bias + g4, z);
        k.gemv_acc(p.w_input, g4, width, in + t * width, z);
        if (t > 0) k.gemv_acc(p.w_recurrent, g4, h, hs + (t - 1) * h, z);
        k.sigmoid(z, h);
        k.sigmoid(z + h, h);
        k.tanh(z + 2 * h, h);
        k.sigmoid(z + 3 * h, h);
        for (std::size_t j = 0; j < h; ++j) {
          const double c_prev = t > 0 ? c[(t - 1) * h + j] : 0.0;
          c[t * h + j] = z[h + j] * c_prev + z[j] * z[2 * h + j];
          tc[t * h + j] = c[t * h + j];
        }
        k.tanh(tc + t * h, h);
        for (std::size_t j = 0; j < h; ++j) hs[t * h + j] = z[3 * h + j] * tc[t * h + j];
        require_finite({hs + t * h, h}, b, layer, t, "hidden output");
      }
    }

    const double* top = hidden_out_[layers_ - 1].data() + (s_len - 1) * h;
    const double pred = model.projection_bias() + k.dot(model.projection_weights().data(), top, h);
    const double err = pred - batch.targets[b];
    loss += err * err;
    const double dpred = 2.0 * err / n;
    if (!std::isfinite(dpred)) {
      throw NumericError("backward: non-finite prediction for sample " + std::to_string(b));
    }

    k.axpy(dpred, top, grad_ptr(model.projection_weights().data()), h);
    gradient.back() += dpred;

    std::fill(dh_external_.begin(), dh_external_.end(), 0.0);
    k.axpy(dpred, model.projection_weights().data(), dh_external_.data() + (s_len - 1) * h, h);

    for (std::size_t li = layers_; li-- > 0;) {
      const auto p = model.layer(li);
      const std::size_t width = p.input_dim;
      const double* in = li == 0 ? window.data() : hidden_out_[li - 1].data();
      const double* gates = gates_[li].data();
      const double* c = cell_[li].data();
      const double* tc = cell_tanh_[li].data();
      const double* hs = hidden_out_[li].data();
      double* g_wx = grad_ptr(p.w_input);
      double* g_wh = grad_ptr(p.w_recurrent);
      double* g_b = grad_ptr(p.bias);
      std::fill(dh_next_.begin(), dh_next_.end(), 0.0);
      std::fill(dc_next_.begin(), dc_next_.end(), 0.0);
      if (li > 0) std::fill(dh_lower_.begin(), dh_lower_.end(), 0.0);

      for (std::size_t t = s_len; t-- > 0;) {
        const double* z = gates + t * g4;
        double* dz = dz_.data();
        for (std::size_t j = 0; j < h; ++j) {
          const double ig = z[j];
          const double fg = z[h + j];
          const double cand = z[2 * h + j];
          const double og = z[3 * h + j];
          const double tcj = tc[t * h + j];
          const double dh = dh_external_[t * h + j] + dh_next_[j];
          const double dc = dc_next_[j] + dh * og * (1.0 - tcj * tcj);
          const double c_prev = t > 0 ? c[(t - 1) * h + j] : 0.0;
          dz[j] = dc * cand * ig * (1.0 - ig);
          dz[h + j] = dc * c_prev * fg * (1.0 - fg);
          dz[2 * h + j] = dc * ig * (1.0 - cand * cand);
          dz[3 * h + j] = dh * tcj * og * (1.0 - og);
          dc_next_[j] = dc * fg;
        }
        require_finite(dz_, b, li, t, "gate gradient");

        k.ger_acc(g_wx, g4, width, dz, in + t * width);
        k.axpy(1.0, dz, g_b, g4);
        std::fill(dh_next_.begin(), dh_next_.end(), 0.0);
        if (t > 0) {
          k.ger_acc(g_wh, g4, h, dz, hs + (t - 1) * h);
          k.gemv_t_acc(p.w_recurrent, g4, h, dz, dh_next_.data());
        }
        if (li > 0) k.gemv_t_acc(p.w_input, g4, width, dz, dh_lower_.data() + t * h);
      }
      if (li > 0) std::swap(dh_external_, dh_lower_);
    }
  }
  return loss / n;
}

LossGradient backward(const LstmModel& model, const SampleBatch& batch) {
  BpttWorkspace ws(model, batch.steps);
  LossGradient out;
  out.gradient.resize(model.parameter_count());
  out.loss = ws.compute(model, batch, out.gradient);
  return out;
}

}  // namespace socsense
