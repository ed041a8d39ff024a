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

#include <optional>
#include <span>
#include <vector>

namespace socsense {

struct TemperatureComponents {
  std::vector<double> low;   // T_LF
  std::vector<double> high;  // T_HF = T - T_LF
};

/// Splits a uniformly sampled temperature series with a first-order low-pass
/// filter: lf[k] = lf[k-1] + a*(T[k] - lf[k-1]), a = dt/(tau + dt).
/// The filter state before the first sample is `initial` (default T[0]).
TemperatureComponents decompose_temperature(std::span<const double> temperature, double tau_s,
                                            double dt_s,
                                            std::optional<double> initial = std::nullopt);

class SignalMatrix;

/// Adds T_HF and T_LF to a matrix holding surface temperature. No-op when
/// there is no temperature channel or the components already exist.
void add_temperature_components(SignalMatrix& matrix, double tau_s);

}  // namespace socsense
