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
#include <span>
#include <type_traits>
#include <vector>

#include "socsense/numerics/adam.hpp"
#include "socsense/numerics/matrix.hpp"
#include "socsense/signals/channels.hpp"

namespace socsense {

enum class Gate : std::size_t { input = 0, forget = 1, cell = 2, output = 3 };
inline constexpr std::size_t kGateCount = 4;

/// View of one layer's parameters inside a model's flat parameter vector.
/// Gate-major: rows [g*H, (g+1)*H) of each stacked matrix belong to gate g.
template <class T>
struct BasicLayerParams {
  std::size_t input_dim = 0;
  std::size_t hidden = 0;
  T* w_input = nullptr;      // 4H x input_dim
  T* w_recurrent = nullptr;  // 4H x H
  T* bias = nullptr;         // 4H

  BasicMatrixView<T> stacked_input() const { return {w_input, kGateCount * hidden, input_dim}; }
  BasicMatrixView<T> stacked_recurrent() const { return {w_recurrent, kGateCount * hidden, hidden}; }

  BasicMatrixView<T> input_weights(Gate g) const {
    return {w_input + static_cast<std::size_t>(g) * hidden * input_dim, hidden, input_dim};
  }
  BasicMatrixView<T> recurrent_weights(Gate g) const {
    return {w_recurrent + static_cast<std::size_t>(g) * hidden * hidden, hidden, hidden};
  }
  std::span<T> gate_bias(Gate g) const {
    return {bias + static_cast<std::size_t>(g) * hidden, hidden};
  }

  operator BasicLayerParams<const T>() const
    requires(!std::is_const_v<T>)
  {
    return {input_dim, hidden, w_input, w_recurrent, bias};
  }
};
using LstmLayerParams = BasicLayerParams<double>;
using ConstLstmLayerParams = BasicLayerParams<const double>;

/// Stacked LSTM regressor: `layers` recurrent layers of equal width followed
/// by a linear projection of the top layer's last hidden vector to one SOC value.
class LstmModel {
 public:
  LstmModel() = default;
  /// All parameters zero.
  LstmModel(std::vector<ChannelId> channels, std::size_t hidden, std::size_t layers = 2);

  /// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights; fan_in is the width of
  /// the vector each row multiplies. Biases and projection bias start at zero.
  static LstmModel initialized(std::vector<ChannelId> channels, std::size_t hidden,
                               std::uint64_t seed, std::size_t layers = 2);

  std::size_t hidden() const { return hidden_; }
  std::size_t layer_count() const { return layer_offsets_.size(); }
  std::size_t input_dim() const { return channels_.size(); }
  std::size_t layer_input_dim(std::size_t layer) const { return layer == 0 ? input_dim() : hidden_; }
  const std::vector<ChannelId>& channels() const { return channels_; }

  LstmLayerParams layer(std::size_t i);
  ConstLstmLayerParams layer(std::size_t i) const;

  std::span<double> projection_weights();
  std::span<const double> projection_weights() const;
  double& projection_bias() { return params_.back(); }
  double projection_bias() const { return params_.back(); }

  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }
  std::size_t parameter_count() const { return params_.size(); }

  /// Named ranges of the flat parameter vector ("layer1.w_input", ...).
  const std::vector<ParamBlock>& blocks() const { return blocks_; }

  /// Zeroes the input-weight column of `channel` in the first layer.
  void zero_input_channel(ChannelId channel);

  friend bool operator==(const LstmModel&, const LstmModel&) = default;

 private:
  std::vector<ChannelId> channels_;
  std::size_t hidden_ = 0;
  std::vector<std::size_t> layer_offsets_;
  std::size_t projection_offset_ = 0;
  std::vector<double> params_;
  std::vector<ParamBlock> blocks_;
};

}  // namespace socsense
