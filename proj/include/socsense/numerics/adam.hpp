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
#include <span>
#include <string>
#include <vector>

namespace socsense {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Moment estimates and step count for one flat parameter vector.
struct AdamState {
  AdamConfig config;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::uint64_t step = 0;

  static AdamState zeros(std::size_t n, AdamConfig config = {});
};

/// Named contiguous range of a flat parameter vector; used for error messages.
struct ParamBlock {
  std::string name;
  std::size_t offset = 0;
  std::size_t size = 0;

  friend bool operator==(const ParamBlock&, const ParamBlock&) = default;
};

/// Applies one bias-corrected Adam step in place.
///
/// Validates shapes and gradient finiteness before touching anything, so a
/// failed call leaves both `params` and `state` unchanged. When `blocks` is
/// given, a non-finite gradient is reported by block name.
void adam_update_inplace(std::span<double> params, std::span<const double> grads,
                         AdamState& state, std::span<const ParamBlock> blocks = {});

struct AdamResult {
  std::vector<double> params;
  AdamState state;
};

/// Pure variant of adam_update_inplace.
AdamResult adam_update(std::span<const double> params, std::span<const double> grads,
                       const AdamState& state, std::span<const ParamBlock> blocks = {});

}  // namespace socsense
