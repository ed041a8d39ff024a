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

#include "socsense/numerics/adam.hpp"

#include <cmath>

#include "socsense/error.hpp"
#include "socsense/simd/kernels.hpp"

namespace socsense {

AdamState AdamState::zeros(std::size_t n, AdamConfig config) {
  AdamState s;
  s.config = config;
  s.first_moment.assign(n, 0.0);
  s.second_moment.assign(n, 0.0);
  return s;
}

namespace {

std::string block_of(std::size_t index, std::span<const ParamBlock> blocks) {
  for (const auto& b : blocks) {
    if (index >= b.offset && index < b.offset + b.size) {
      return b.name + "[" + std::to_string(index - b.offset) + "]";
    }
  }
  return "parameter[" + std::to_string(index) + "]";
}

}  // namespace

void adam_update_inplace(std::span<double> params, std::span<const double> grads,
                         AdamState& state, std::span<const ParamBlock> blocks) {
  const std::size_t n = params.size();
  if (grads.size() != n || state.first_moment.size() != n || state.second_moment.size() != n) {
    throw ShapeError("adam_update: params " + std::to_string(n) + ", grads " +
                     std::to_string(grads.size()) + ", moments " +
                     std::to_string(state.first_moment.size()) + "/" +
                     std::to_string(state.second_moment.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(grads[i])) {
      throw NumericError("adam_update: non-finite gradient in " + block_of(i, blocks));
    }
  }
  const AdamConfig& c = state.config;
  const std::uint64_t t = state.step + 1;
  const double td = static_cast<double>(t);
  simd::AdamCoefficients k{c.learning_rate,
                           c.beta1,
                           c.beta2,
                           c.epsilon,
                           1.0 / (1.0 - std::pow(c.beta1, td)),
                           1.0 / (1.0 - std::pow(c.beta2, td))};
  simd::active().adam_step(params.data(), grads.data(), state.first_moment.data(),
                           state.second_moment.data(), n, k);
  state.step = t;
}

AdamResult adam_update(std::span<const double> params, std::span<const double> grads,
                       const AdamState& state, std::span<const ParamBlock> blocks) {
  AdamResult out{{params.begin(), params.end()}, state};
  adam_update_inplace(out.params, grads, out.state, blocks);
  return out;
}

}  // namespace socsense
