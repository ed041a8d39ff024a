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

#include "socsense/signals/decompose.hpp"

#include "socsense/error.hpp"
#include "socsense/signals/signal_matrix.hpp"

namespace socsense {

TemperatureComponents decompose_temperature(std::span<const double> temperature, double tau_s,
                                            double dt_s, std::optional<double> initial) {
  if (temperature.empty()) throw InputError("decompose_temperature: empty series");
  if (!(tau_s > 0.0)) throw InputError("decompose_temperature: tau must be positive");
  if (!(dt_s > 0.0)) throw InputError("decompose_temperature: sample period must be positive");

  const double alpha = dt_s / (tau_s + dt_s);
  TemperatureComponents out;
  out.low.resize(temperature.size());
  out.high.resize(temperature.size());
  double state = initial.value_or(temperature[0]);
  for (std::size_t k = 0; k < temperature.size(); ++k) {
    state += alpha * (temperature[k] - state);
    out.low[k] = state;
    out.high[k] = temperature[k] - state;
  }
  return out;
}

void add_temperature_components(SignalMatrix& matrix, double tau_s) {
  if (!matrix.has_channel(ChannelId::temp_surface)) return;
  if (matrix.has_channel(ChannelId::temp_hf) || matrix.has_channel(ChannelId::temp_lf)) return;
  const auto t = matrix.column(ChannelId::temp_surface);
  auto parts = decompose_temperature(t, tau_s, matrix.sample_period());
  matrix.add_channel(ChannelId::temp_hf, parts.high);
  matrix.add_channel(ChannelId::temp_lf, parts.low);
}

}  // namespace socsense
