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

#include "socsense/lstm/model.hpp"

#include <algorithm>

#include "socsense/error.hpp"
#include "socsense/numerics/rng.hpp"

namespace socsense {

LstmModel::LstmModel(std::vector<ChannelId> channels, std::size_t hidden, std::size_t layers)
    : channels_(std::move(channels)), hidden_(hidden) {
  if (channels_.empty()) throw InputError("model needs at least one input channel");
  if (hidden_ == 0) throw InputError("hidden size must be positive");
  if (layers == 0) throw InputError("model needs at least one layer");
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (channels_[i] == channels_[j]) {
        throw InputError("duplicate model channel " + std::string(channel_symbol(channels_[i])));
      }
    }
  }
  const std::size_t g = kGateCount * hidden_;
  std::size_t offset = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = l == 0 ? channels_.size() : hidden_;
    const std::string prefix = "layer" + std::to_string(l + 1) + ".";
    layer_offsets_.push_back(offset);
    blocks_.push_back({prefix + "w_input", offset, g * in});
    offset += g * in;
    blocks_.push_back({prefix + "w_recurrent", offset, g * hidden_});
    offset += g * hidden_;
    blocks_.push_back({prefix + "bias", offset, g});
    offset += g;
  }
  projection_offset_ = offset;
  blocks_.push_back({"projection.weights", offset, hidden_});
  offset += hidden_;
  blocks_.push_back({"projection.bias", offset, 1});
  offset += 1;
  params_.assign(offset, 0.0);
}

LstmModel LstmModel::initialized(std::vector<ChannelId> channels, std::size_t hidden,
                                 std::uint64_t seed, std::size_t layers) {
  LstmModel m(std::move(channels), hidden, layers);
  Rng rng(seed);
  for (std::size_t l = 0; l < m.layer_count(); ++l) {
    auto p = m.layer(l);
    init_uniform_fan_in(p.stacked_input().flat(), p.input_dim, rng);
    init_uniform_fan_in(p.stacked_recurrent().flat(), p.hidden, rng);
  }
  init_uniform_fan_in(m.projection_weights(), hidden, rng);
  return m;
}

LstmLayerParams LstmModel::layer(std::size_t i) {
  if (i >= layer_count()) throw ShapeError("layer index out of range");
  const std::size_t in = layer_input_dim(i);
  double* base = params_.data() + layer_offsets_[i];
  const std::size_t g = kGateCount * hidden_;
  return {in, hidden_, base, base + g * in, base + g * in + g * hidden_};
}

ConstLstmLayerParams LstmModel::layer(std::size_t i) const {
  auto p = const_cast<LstmModel*>(this)->layer(i);
  return {p.input_dim, p.hidden, p.w_input, p.w_recurrent, p.bias};
}

std::span<double> LstmModel::projection_weights() {
  return {params_.data() + projection_offset_, hidden_};
}

std::span<const double> LstmModel::projection_weights() const {
  return {params_.data() + projection_offset_, hidden_};
}

void LstmModel::zero_input_channel(ChannelId channel) {
  auto it = std::find(channels_.begin(), channels_.end(), channel);
  if (it == channels_.end()) {
    throw InputError("model has no channel " + std::string(channel_symbol(channel)));
  }
  const std::size_t c = static_cast<std::size_t>(it - channels_.begin());
  auto w = layer(0).stacked_input();
  for (std::size_t r = 0; r < w.rows; ++r) w(r, c) = 0.0;
}

}  // namespace socsense
