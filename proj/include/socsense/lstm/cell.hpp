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

#include <span>

#include "socsense/lstm/model.hpp"

namespace socsense {

/// Cell state C and hidden output of one layer.
struct LayerState {
  Vector cell;
  Vector hidden;

  static LayerState zeros(std::size_t hidden);
};

struct CellStepResult {
  LayerState state;
  Vector input_gate;
  Vector forget_gate;
  Vector candidate;
  Vector output_gate;
};

/// One LSTM step:
///   i = σ(Wxi x + Whi h + bi), f = σ(...), o = σ(...), c~ = tanh(...)
///   C = f∘C_prev + i∘c~,  h = o∘tanh(C)
/// Throws ShapeError on mismatched operands and NumericError if a gate leaves
/// its range or a value is not finite.
CellStepResult cell_step(ConstLstmLayerParams params, std::span<const double> x,
                         const LayerState& prev);

}  // namespace socsense
