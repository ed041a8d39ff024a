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

#include "socsense/lstm/cell.hpp"

#include <cmath>

#include "socsense/error.hpp"
#include "socsense/simd/kernels.hpp"

namespace socsense {

LayerState LayerState::zeros(std::size_t hidden) {
  return {Vector(hidden, 0.0), Vector(hidden, 0.0)};
}

namespace {

void check_range(const Vector& v, double lo, double hi, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x) || x < lo || x > hi) {
      throw NumericError(std::string("cell_step: ") + what + " value " + std::to_string(x) +
                         " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
}

}  // namespace

CellStepResult cell_step(ConstLstmLayerParams p, std::span<const double> x,
                         const LayerState& prev) {
  const std::size_t h = p.hidden;
  if (x.size() != p.input_dim || prev.hidden.size() != h || prev.cell.size() != h) {
    throw ShapeError("cell_step: layer expects input " + std::to_string(p.input_dim) +
                     " and state " + std::to_string(h) + ", got input " +
                     std::to_string(x.size()) + ", hidden " + std::to_string(prev.hidden.size()) +
                     ", cell " + std::to_string(prev.cell.size()));
  }
  const auto& k = simd::active();
  Vector z(p.bias, p.bias + kGateCount * h);
  k.gemv_acc(p.w_input, kGateCount * h, p.input_dim, x.data(), z.data());
  k.gemv_acc(p.w_recurrent, kGateCount * h, h, prev.hidden.data(), z.data());

  CellStepResult out;
  out.input_gate.assign(z.begin(), z.begin() + h);
  out.forget_gate.assign(z.begin() + h, z.begin() + 2 * h);
  out.candidate.assign(z.begin() + 2 * h, z.begin() + 3 * h);
  out.output_gate.assign(z.begin() + 3 * h, z.end());
  k.sigmoid(out.input_gate.data(), h);
  k.sigmoid(out.forget_gate.data(), h);
  k.tanh(out.candidate.data(), h);
  k.sigmoid(out.output_gate.data(), h);

  out.state.cell.resize(h);
  out.state.hidden.resize(h);
  for (std::size_t j = 0; j < h; ++j) {
    out.state.cell[j] = out.forget_gate[j] * prev.cell[j] + out.input_gate[j] * out.candidate[j];
  }
  Vector tc = out.state.cell;
  k.tanh(tc.data(), h);
  for (std::size_t j = 0; j < h; ++j) out.state.hidden[j] = out.output_gate[j] * tc[j];

  check_range(out.input_gate, 0.0, 1.0, "input gate");
  check_range(out.forget_gate, 0.0, 1.0, "forget gate");
  check_range(out.output_gate, 0.0, 1.0, "output gate");
  check_range(out.candidate, -1.0, 1.0, "candidate");
  check_range(out.state.hidden, -1.0, 1.0, "hidden output");
  check_range(out.state.cell, -1e300, 1e300, "cell state");
  return out;
}

}  // namespace socsense
