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
#include <string>
#include <variant>
#include <vector>

#include "socsense/signals/signal_matrix.hpp"
#include "socsense/synthcell/curve.hpp"

namespace socsense {

/// Gaussian measurement-noise standard deviations.
struct SensorNoise {
  double current_a = 0.01;
  double voltage_v = 0.002;
  double temperature_c = 0.05;
  double expansion_um = 0.5;
  double intensity_au = 0.5;
  double wavelength_nm = 0.01;
  double electrode_v = 0.001;
  double force_n = 0.2;
  double pressure_kpa = 0.02;

  static SensorNoise none() { return {0, 0, 0, 0, 0, 0, 0, 0, 0}; }
};

/// Ambient temperature: base + amplitude * sin(2*pi*t/period).
struct AmbientProfile {
  double base_c = 25.0;
  double amplitude_c = 0.0;
  double period_s = 6.0 * 3600.0;
};

/// Equivalent-circuit cell (OCV + R0 + one RC pair) with lumped thermal mass
/// and surrogate auxiliary sensors. Current is positive on discharge, so the
/// terminal voltage is OCV(SOC) - I*R0 - V_RC.
struct CellConfig {
  double capacity_ah = 5.0;
  PiecewiseLinear ocv;  // SOC -> V
  double r0_ohm = 0.006;
  double r1_ohm = 0.004;
  double c1_f = 7500.0;
  double nominal_voltage = 3.7;
  /// Arrhenius temperature of R0 and R1 in kelvin: R(T) = R * exp(k (1/T - 1/T_ref)).
  /// 0 keeps both resistances constant.
  double resistance_activation_k = 0.0;

  double thermal_mass_j_per_k = 90.0;
  double heat_transfer_w_per_k = 0.1;
  AmbientProfile ambient;
  /// Core-to-surface thermal resistance for the internal temperature sensor.
  double internal_thermal_resistance_k_per_w = 2.0;

  PiecewiseLinear expansion_um;  // SOC -> µm, monotone
  double expansion_drift_um_per_cycle = 0.05;
  double expansion_thermal_um_per_c = 0.5;
  double reference_temperature_c = 25.0;

  PiecewiseLinear intensity_au;   // lagged SOC -> a.u.
  PiecewiseLinear wavelength_nm;  // lagged SOC -> nm
  double optical_lag_s = 60.0;

  PiecewiseLinear anode_ocp_v;  // SOC -> V vs Li, decreasing
  double anode_resistance_ohm = 0.002;

  double force_preload_n = 50.0;
  double force_stiffness_n_per_um = 2.0;

  double pressure_base_kpa = 101.3;
  double pressure_gain_kpa_per_cycle = 0.1;
  double pressure_thermal_kpa_per_c = 0.35;

  SensorNoise noise;
  std::uint64_t seed = 42;
  double initial_soc = 0.5;

  /// Measured channels written to the output matrix, in order.
  std::vector<ChannelId> channels{ChannelId::current, ChannelId::voltage, ChannelId::expansion,
                                  ChannelId::temp_surface};

  void validate() const;
};

struct CcCharge {
  double c_rate = 1.0;
  double voltage_limit = 4.2;
};
struct CvCharge {
  double voltage = 4.2;
  double cutoff_c_rate = 0.02;
  double max_c_rate = 1.0;  // charger current limit
};
struct Rest {
  double duration_s = 600.0;
};
struct CcDischarge {
  double c_rate = 1.0;
  double voltage_limit = 2.7;
  double soc_limit = 0.0;
  double duration_s = 0.0;  // 0: no time limit
};

enum class LoadProfile { drive_cycle, dst };

/// Repeats a normalized power profile; peak power = peak_c_rate * Q * V_nominal.
struct DynamicDischarge {
  LoadProfile profile = LoadProfile::drive_cycle;
  double peak_c_rate = 2.0;
  double voltage_limit = 2.5;
  double soc_limit = 0.0;
  /// Regenerative pulses are current-limited so V stays at or below this.
  double voltage_ceiling = 4.2;
};

using ProtocolPhase = std::variant<CcCharge, CvCharge, Rest, CcDischarge, DynamicDischarge>;

/// Phases run in order once per cycle.
struct Protocol {
  std::vector<ProtocolPhase> phases;
  /// A phase that has not terminated after this long is treated as unreachable.
  double max_phase_s = 24.0 * 3600.0;

  void validate(const CellConfig& cell) const;
};

std::string phase_name(const ProtocolPhase& phase);

/// Normalized power profile (fraction of peak; positive discharges) sampled at 1 s.
const std::vector<double>& load_profile(LoadProfile profile);

/// Noise-free quantities alongside the measured matrix.
struct SimulationTrace {
  SignalMatrix measured;
  std::vector<double> true_current;
  std::vector<double> true_voltage;
  std::vector<double> expansion_clean;
};

/// 1 Hz simulation of `cycles` repetitions of the protocol. SOC integrates the
/// true current exactly; measured channels carry seeded Gaussian noise.
SimulationTrace simulate_trace(const CellConfig& config, const Protocol& protocol,
                               std::size_t cycles);
SignalMatrix simulate(const CellConfig& config, const Protocol& protocol, std::size_t cycles);

}  // namespace socsense
