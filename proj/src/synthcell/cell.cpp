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

#include "socsense/synthcell/cell.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "socsense/error.hpp"

namespace socsense {

namespace {

constexpr double kDt = 1.0;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::vector<double> expand_segments(std::initializer_list<std::pair<int, double>> segments) {
  std::vector<double> out;
  for (const auto& [duration, fraction] : segments) out.insert(out.end(), duration, fraction);
  return out;
}

}  // namespace

void CellConfig::validate() const {
  if (!(capacity_ah > 0)) throw InputError("cell capacity must be positive");
  if (ocv.empty() || !ocv.strictly_increasing()) {
    throw InputError("OCV curve must be strictly increasing in SOC");
  }
  if (ocv.x().front() > 0.0 || ocv.x().back() < 1.0) {
    throw InputError("OCV curve must cover SOC in [0,1]");
  }
  if (!(r0_ohm > 0) || !(r1_ohm > 0) || !(c1_f > 0)) {
    throw InputError("circuit parameters must be positive");
  }
  if (!(thermal_mass_j_per_k > 0) || !(heat_transfer_w_per_k >= 0)) {
    throw InputError("thermal parameters must be positive");
  }
  if (!(initial_soc >= 0.0 && initial_soc <= 1.0)) throw InputError("initial SOC outside [0,1]");
  const SensorNoise& n = noise;
  for (double s : {n.current_a, n.voltage_v, n.temperature_c, n.expansion_um, n.intensity_au,
                   n.wavelength_nm, n.electrode_v, n.force_n, n.pressure_kpa}) {
    if (!(s >= 0)) throw InputError("noise standard deviations must be >= 0");
  }
  for (ChannelId c : channels) {
    switch (c) {
      case ChannelId::expansion:
      case ChannelId::force:
        if (expansion_um.empty()) throw InputError("expansion curve required");
        break;
      case ChannelId::intensity:
        if (intensity_au.empty()) throw InputError("intensity curve required");
        break;
      case ChannelId::wavelength:
        if (wavelength_nm.empty()) throw InputError("wavelength curve required");
        break;
      case ChannelId::anode:
      case ChannelId::cathode:
        if (anode_ocp_v.empty()) throw InputError("anode potential curve required");
        break;
      case ChannelId::temp_hf:
      case ChannelId::temp_lf:
        throw InputError("derived temperature channels cannot be simulated directly");
      default:
        break;
    }
  }
}

void Protocol::validate(const CellConfig& cell) const {
  if (phases.empty()) throw InputError("protocol needs at least one phase");
  if (!(max_phase_s > 0)) throw InputError("max_phase_s must be positive");
  const double lo = cell.ocv(0.0);
  const double hi = cell.ocv(1.0);
  auto in_range = [&](double v, const std::string& name) {
    if (!(v >= lo && v <= hi)) {
      throw InputError(name + ": voltage limit " + std::to_string(v) + " outside OCV range");
    }
  };
  for (const auto& p : phases) {
    const std::string name = phase_name(p);
    std::visit(Overloaded{
                   [&](const CcCharge& c) {
                     if (!(c.c_rate > 0)) throw InputError(name + ": C-rate must be positive");
                     in_range(c.voltage_limit, name);
                   },
                   [&](const CvCharge& c) {
                     if (!(c.cutoff_c_rate > 0) || !(c.max_c_rate > c.cutoff_c_rate)) {
                       throw InputError(name + ": invalid cutoff/limit current");
                     }
                     in_range(c.voltage, name);
                   },
                   [&](const Rest& r) {
                     if (!(r.duration_s >= kDt)) throw InputError(name + ": duration too short");
                   },
                   [&](const CcDischarge& c) {
                     if (!(c.c_rate > 0)) throw InputError(name + ": C-rate must be positive");
                     if (!(c.duration_s >= 0)) throw InputError(name + ": negative duration");
                     in_range(c.voltage_limit, name);
                   },
                   [&](const DynamicDischarge& d) {
                     if (!(d.peak_c_rate > 0)) throw InputError(name + ": peak rate must be positive");
                     in_range(d.voltage_limit, name);
                     if (!(d.voltage_ceiling > d.voltage_limit)) {
                       throw InputError(name + ": voltage ceiling below limit");
                     }
                   },
               },
               p);
  }
}

std::string phase_name(const ProtocolPhase& phase) {
  return std::visit(Overloaded{
                        [](const CcCharge&) { return std::string("cc_charge"); },
                        [](const CvCharge&) { return std::string("cv_charge"); },
                        [](const Rest&) { return std::string("rest"); },
                        [](const CcDischarge&) { return std::string("cc_discharge"); },
                        [](const DynamicDischarge& d) {
                          return std::string(d.profile == LoadProfile::dst ? "dst_discharge"
                                                                           : "drive_discharge");
                        },
                    },
                    phase);
}

const std::vector<double>& load_profile(LoadProfile profile) {
  // Fraction of peak power per second, discharge positive; negative entries are
  // regenerative pulses.
  static const std::vector<double> dst = expand_segments({
      {16, 0.0},  {28, 0.125}, {12, 0.25}, {8, -0.125}, {16, 0.0},   {24, 0.125}, {12, 0.25},
      {8, -0.125}, {16, 0.0},  {24, 0.125}, {12, 0.25}, {8, -0.125}, {16, 0.0},   {36, 0.125},
      {8, 1.0},   {24, 0.625}, {8, -0.25}, {32, 0.25},  {8, -0.5},   {44, 0.0},
  });
  static const std::vector<double> drive = expand_segments({
      {20, 0.0},  {15, 0.3},  {25, 0.55}, {10, -0.2}, {20, 0.1},  {15, 0.8},   {30, 0.45},
      {10, -0.35}, {25, 0.0}, {20, 0.35}, {40, 0.6},  {15, 1.0},  {20, 0.7},   {10, -0.5},
      {30, 0.25}, {25, 0.4},  {15, -0.15}, {35, 0.5}, {20, 0.9},  {10, -0.3},  {40, 0.3},
      {25, 0.65}, {15, -0.25}, {30, 0.15}, {20, 0.45}, {45, 0.55}, {10, -0.4}, {25, 0.2},
  });
  return profile == LoadProfile::dst ? dst : drive;
}

namespace {

struct CellState {
  double soc = 0.0;
  double v_rc = 0.0;
  double temp = 25.0;
  double soc_lag = 0.0;
  double time = 0.0;
  int cycle = 0;
};

class Simulator {
 public:
  Simulator(const CellConfig& cfg, const Protocol& protocol)
      : cfg_(cfg),
        protocol_(protocol),
        rng_(cfg.seed),
        lag_gain_(cfg.optical_lag_s > 0 ? 1.0 - std::exp(-kDt / cfg.optical_lag_s) : 1.0) {
    state_.soc = cfg.initial_soc;
    state_.soc_lag = cfg.initial_soc;
    state_.temp = ambient(0.0);
  }

  SimulationTrace run(std::size_t cycles) {
    for (std::size_t c = 0; c < cycles; ++c) {
      state_.cycle = static_cast<int>(c) + 1;
      for (const auto& phase : protocol_.phases) run_phase(phase);
    }
    if (time_.empty()) throw InputError("protocol produced no samples");
    Matrix values(time_.size(), cfg_.channels.size(), std::move(rows_));
    SimulationTrace out{SignalMatrix(std::move(time_), cfg_.channels, std::move(values)),
                        std::move(true_current_), std::move(true_voltage_),
                        std::move(expansion_clean_)};
    out.measured.set_soc(std::move(soc_));
    out.measured.set_cycle(std::move(cycle_));
    out.measured.set_phase(std::move(phase_));
    return out;
  }

 private:
  double ambient(double t) const {
    const AmbientProfile& a = cfg_.ambient;
    return a.base_c + a.amplitude_c * std::sin(2.0 * std::numbers::pi * t / a.period_s);
  }

  double ocv() const { return cfg_.ocv(state_.soc); }
  double arrhenius() const {
    if (cfg_.resistance_activation_k == 0.0) return 1.0;
    constexpr double kKelvin = 273.15;
    return std::exp(cfg_.resistance_activation_k *
                    (1.0 / (state_.temp + kKelvin) -
                     1.0 / (cfg_.reference_temperature_c + kKelvin)));
  }
  double r0() const { return cfg_.r0_ohm * arrhenius(); }
  double r1() const { return cfg_.r1_ohm * arrhenius(); }
  double terminal(double current) const { return ocv() - current * r0() - state_.v_rc; }
  double one_c() const { return cfg_.capacity_ah; }

  [[noreturn]] void unreachable(const std::string& phase, const std::string& why) const {
    throw InputError("protocol phase '" + phase + "' (cycle " + std::to_string(state_.cycle) +
                     "): limit unreachable, " + why);
  }

  double noisy(double value, double sigma) {
    if (sigma == 0.0) return value;
    return value + sigma * normal_(rng_);
  }

  void record(double current, double voltage, const std::string& phase) {
    const double heat = current * current * r0() + state_.v_rc * state_.v_rc / r1();
    const double expansion =
        cfg_.expansion_um.empty()
            ? 0.0
            : cfg_.expansion_um(state_.soc) +
                  cfg_.expansion_drift_um_per_cycle * (state_.cycle - 1) +
                  cfg_.expansion_thermal_um_per_c * (state_.temp - cfg_.reference_temperature_c);
    const SensorNoise& n = cfg_.noise;
    for (ChannelId c : cfg_.channels) {
      double v = 0.0;
      switch (c) {
        case ChannelId::current:
          v = noisy(current, n.current_a);
          break;
        case ChannelId::voltage:
          v = noisy(voltage, n.voltage_v);
          break;
        case ChannelId::expansion:
          v = noisy(expansion, n.expansion_um);
          break;
        case ChannelId::temp_surface:
          v = noisy(state_.temp, n.temperature_c);
          break;
        case ChannelId::temp_internal:
          v = noisy(state_.temp + cfg_.internal_thermal_resistance_k_per_w * heat,
                    n.temperature_c);
          break;
        case ChannelId::intensity:
          v = noisy(cfg_.intensity_au(state_.soc_lag), n.intensity_au);
          break;
        case ChannelId::wavelength:
          v = noisy(cfg_.wavelength_nm(state_.soc_lag), n.wavelength_nm);
          break;
        case ChannelId::anode:
          v = noisy(cfg_.anode_ocp_v(state_.soc) + current * cfg_.anode_resistance_ohm,
                    n.electrode_v);
          break;
        case ChannelId::cathode:
          v = noisy(voltage + cfg_.anode_ocp_v(state_.soc) + current * cfg_.anode_resistance_ohm,
                    n.electrode_v);
          break;
        case ChannelId::force:
          v = noisy(cfg_.force_preload_n + cfg_.force_stiffness_n_per_um * expansion, n.force_n);
          break;
        case ChannelId::pressure:
          v = noisy(cfg_.pressure_base_kpa +
                        cfg_.pressure_gain_kpa_per_cycle * (state_.cycle - 1) +
                        cfg_.pressure_thermal_kpa_per_c *
                            (state_.temp - cfg_.reference_temperature_c),
                    n.pressure_kpa);
          break;
        default:
          break;
      }
      rows_.push_back(v);
    }
    time_.push_back(state_.time);
    soc_.push_back(state_.soc);
    cycle_.push_back(state_.cycle);
    phase_.push_back(phase);
    true_current_.push_back(current);
    true_voltage_.push_back(voltage);
    expansion_clean_.push_back(expansion);
    last_heat_ = heat;
  }

  // Holds `current` for one step and integrates the state.
  void advance(double current, const std::string& phase) {
    const double soc = state_.soc - current * kDt / (3600.0 * cfg_.capacity_ah);
    if (soc > 1.0 + 1e-12) unreachable(phase, "SOC would exceed 1");
    if (soc < -1e-12) unreachable(phase, "SOC would fall below 0");
    state_.soc_lag += (state_.soc - state_.soc_lag) * lag_gain_;
    state_.soc = std::clamp(soc, 0.0, 1.0);
    const double r1_now = r1();
    const double decay = std::exp(-kDt / (r1_now * cfg_.c1_f));
    state_.v_rc = decay * state_.v_rc + r1_now * (1.0 - decay) * current;
    state_.temp += kDt / cfg_.thermal_mass_j_per_k *
                   (last_heat_ - cfg_.heat_transfer_w_per_k * (state_.temp - ambient(state_.time)));
    state_.time += kDt;
  }

  void step(double current, double voltage, const std::string& phase) {
    record(current, voltage, phase);
    advance(current, phase);
  }

  void check_elapsed(double elapsed, const std::string& phase) const {
    if (elapsed > protocol_.max_phase_s) {
      unreachable(phase, "no termination after " + std::to_string(protocol_.max_phase_s) + " s");
    }
  }

  void run_phase(const ProtocolPhase& phase) {
    const std::string name = phase_name(phase);
    std::visit(Overloaded{
                   [&](const CcCharge& p) {
                     const double current = -p.c_rate * one_c();
                     for (double elapsed = 0;; elapsed += kDt) {
                       check_elapsed(elapsed, name);
                       const double v = terminal(current);
                       if (v >= p.voltage_limit) break;
                       step(current, v, name);
                     }
                   },
                   [&](const CvCharge& p) {
                     const double limit = p.max_c_rate * one_c();
                     for (double elapsed = 0;; elapsed += kDt) {
                       check_elapsed(elapsed, name);
                       double current = (ocv() - state_.v_rc - p.voltage) / r0();
                       if (-current <= p.cutoff_c_rate * one_c()) break;
                       current = std::max(current, -limit);
                       step(current, terminal(current), name);
                     }
                   },
                   [&](const Rest& p) {
                     const auto n = static_cast<std::size_t>(p.duration_s / kDt);
                     for (std::size_t i = 0; i < n; ++i) step(0.0, terminal(0.0), name);
                   },
                   [&](const CcDischarge& p) {
                     const double current = p.c_rate * one_c();
                     for (double elapsed = 0;; elapsed += kDt) {
                       if (p.duration_s > 0 && elapsed >= p.duration_s) break;
                       check_elapsed(elapsed, name);
                       const double v = terminal(current);
                       if (v <= p.voltage_limit || state_.soc <= p.soc_limit) break;
                       step(current, v, name);
                     }
                   },
                   [&](const DynamicDischarge& p) {
                     const auto& profile = load_profile(p.profile);
                     const double peak = p.peak_c_rate * one_c() * cfg_.nominal_voltage;
                     for (std::size_t i = 0;; ++i) {
                       check_elapsed(static_cast<double>(i) * kDt, name);
                       const double power = profile[i % profile.size()] * peak;
                       const double e = ocv() - state_.v_rc;
                       // V*I = P with V = e - R0*I.
                       const double disc = e * e - 4.0 * r0() * power;
                       if (disc < 0) break;  // power beyond the cell's capability
                       double current = 2.0 * power / (e + std::sqrt(disc));
                       double v = terminal(current);
                       if (v > p.voltage_ceiling) {
                         current = (e - p.voltage_ceiling) / r0();
                         v = terminal(current);
                       }
                       if (v <= p.voltage_limit || state_.soc <= p.soc_limit) break;
                       step(current, v, name);
                     }
                   },
               },
               phase);
  }

  const CellConfig& cfg_;
  const Protocol& protocol_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  double lag_gain_;
  double last_heat_ = 0.0;
  CellState state_;

  std::vector<double> time_;
  std::vector<double> rows_;
  std::vector<double> soc_;
  std::vector<int> cycle_;
  std::vector<std::string> phase_;
  std::vector<double> true_current_;
  std::vector<double> true_voltage_;
  std::vector<double> expansion_clean_;
};

}  // namespace

SimulationTrace simulate_trace(const CellConfig& config, const Protocol& protocol,
                               std::size_t cycles) {
  config.validate();
  protocol.validate(config);
  if (cycles == 0) throw InputError("cycle count must be positive");
  return Simulator(config, protocol).run(cycles);
}

SignalMatrix simulate(const CellConfig& config, const Protocol& protocol, std::size_t cycles) {
  return simulate_trace(config, protocol, cycles).measured;
}

}  // namespace socsense
