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

#include "socsense/synthcell/suite.hpp"

#include <json.hpp>

#include "socsense/error.hpp"
#include "socsense/provenance.hpp"
#include "socsense/signals/csv.hpp"

namespace socsense {

namespace {

// Flat between roughly 30% and 70% SOC, steep at both ends.
PiecewiseLinear nmc_graphite_ocv() {
  return {{0.0, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 1.0},
          {2.50, 3.05, 3.40, 3.50, 3.57, 3.61, 3.635, 3.66, 3.685, 3.72, 3.81, 3.95, 4.06, 4.20}};
}

// Graphite swelling shape, scaled to `full_um` at SOC 1.
PiecewiseLinear graphite_expansion(double full_um) {
  std::vector<double> x{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> y{0.0, 6.0, 11.0, 15.0, 19.0, 24.0, 30.0, 37.0, 45.0, 54.0, 64.0};
  for (double& v : y) v *= full_um / 64.0;
  return {std::move(x), std::move(y)};
}

}  // namespace

Scenario expansion_cell_scenario(std::uint64_t seed) {
  Scenario s;
  s.name = "expansion-cell";
  s.cell_type = "pouch NMC/graphite 5 Ah, displacement sensor";
  CellConfig& c = s.cell;
  c.capacity_ah = 5.0;
  c.ocv = nmc_graphite_ocv();
  c.r0_ohm = 0.006;
  c.r1_ohm = 0.004;
  c.c1_f = 7500.0;
  c.thermal_mass_j_per_k = 90.0;
  c.heat_transfer_w_per_k = 0.1;
  c.ambient = {25.0, 4.0, 7.0 * 3600.0};
  c.resistance_activation_k = 4000.0;
  c.expansion_um = graphite_expansion(64.0);
  c.expansion_drift_um_per_cycle = 0.05;
  c.expansion_thermal_um_per_c = 0.5;
  c.initial_soc = 0.5;
  c.seed = seed;
  c.channels = {ChannelId::current, ChannelId::voltage, ChannelId::expansion,
                ChannelId::temp_surface};
  s.protocol.phases = {
      CcCharge{1.5, 4.2},
      CvCharge{4.2, 0.02, 1.5},
      DynamicDischarge{LoadProfile::drive_cycle, 2.5, 3.0, 0.5, 4.2},
  };
  return s;
}

Scenario optical_cell_scenario(std::uint64_t seed) {
  Scenario s;
  s.name = "optical-cell";
  s.cell_type = "pouch 9 Ah, embedded fiber-optic sensor";
  CellConfig& c = s.cell;
  c.capacity_ah = 9.0;
  c.ocv = nmc_graphite_ocv();
  c.r0_ohm = 0.003;
  c.r1_ohm = 0.002;
  c.c1_f = 15000.0;
  c.thermal_mass_j_per_k = 180.0;
  c.heat_transfer_w_per_k = 0.2;
  c.ambient = {25.0, 0.5, 6.0 * 3600.0};
  c.intensity_au = {{0.0, 0.2, 0.4, 0.6, 0.8, 1.0}, {1200.0, 1150.0, 1080.0, 1000.0, 930.0, 880.0}};
  c.wavelength_nm = {{0.0, 0.25, 0.5, 0.75, 1.0}, {1550.00, 1550.12, 1550.30, 1550.45, 1550.62}};
  c.optical_lag_s = 120.0;
  c.initial_soc = 0.05;
  c.seed = seed;
  c.channels = {ChannelId::current, ChannelId::voltage, ChannelId::intensity,
                ChannelId::wavelength};
  s.protocol.phases = {
      CvCharge{4.2, 0.05, 1.0},
      CcDischarge{1.5, 2.7, 0.0, 0.0},
      Rest{600.0},
  };
  return s;
}

Scenario force_cell_scenario(std::uint64_t seed) {
  Scenario s;
  s.name = "force-cell";
  s.cell_type = "coin cell 5 mAh with reference electrode, load cell, internal T and P";
  CellConfig& c = s.cell;
  c.capacity_ah = 0.005;
  c.ocv = nmc_graphite_ocv();
  c.r0_ohm = 8.0;
  c.r1_ohm = 6.0;
  c.c1_f = 5.0;
  c.thermal_mass_j_per_k = 3.0;
  c.heat_transfer_w_per_k = 0.01;
  c.ambient = {25.0, 0.3, 8.0 * 3600.0};
  c.internal_thermal_resistance_k_per_w = 20.0;
  c.expansion_um = graphite_expansion(6.4);
  c.expansion_drift_um_per_cycle = 0.005;
  c.expansion_thermal_um_per_c = 0.05;
  c.anode_ocp_v = {{0.0, 0.03, 0.08, 0.15, 0.25, 0.35, 0.5, 0.55, 0.7, 0.85, 1.0},
                   {0.80, 0.30, 0.22, 0.20, 0.16, 0.125, 0.12, 0.095, 0.088, 0.085, 0.08}};
  c.anode_resistance_ohm = 3.0;
  c.force_preload_n = 50.0;
  c.force_stiffness_n_per_um = 15.0;
  c.noise.current_a = 1e-5;
  c.initial_soc = 0.05;
  c.seed = seed;
  c.channels = {ChannelId::current,  ChannelId::voltage,       ChannelId::cathode,
                ChannelId::anode,    ChannelId::force,         ChannelId::temp_internal,
                ChannelId::pressure};
  s.protocol.phases = {
      CcCharge{0.5, 4.2},
      CvCharge{4.2, 0.02, 0.5},
      Rest{600.0},
      DynamicDischarge{LoadProfile::dst, 3.0, 2.5, 0.0, 4.2},
  };
  return s;
}

Scenario scenario_by_name(const std::string& name, std::uint64_t seed) {
  if (name == "expansion-cell") return expansion_cell_scenario(seed);
  if (name == "optical-cell") return optical_cell_scenario(seed);
  if (name == "force-cell") return force_cell_scenario(seed);
  throw InputError("unknown scenario '" + name +
                   "' (expected expansion-cell, optical-cell or force-cell)");
}

SuiteOutput generate_suite(const std::string& scenario, const std::filesystem::path& out_dir,
                           std::size_t cycles, std::uint64_t seed,
                           const std::string& config_hash_in) {
  const Scenario s = scenario_by_name(scenario, seed);
  const std::string hash =
      config_hash_in.empty()
          ? config_hash(
                nlohmann::json{{"scenario", scenario}, {"seed", seed}, {"cycles", cycles}}.dump())
          : config_hash_in;

  const SignalMatrix m = simulate(s.cell, s.protocol, cycles);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create output directory " + out_dir.string() + ": " + ec.message());

  ManifestFile file;
  file.path = scenario + ".csv";
  file.cycles = cycles;
  const auto& cyc = *m.cycle();
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    if (i == 0 || cyc[i] != cyc[i - 1]) file.cycle_boundaries_s.push_back(m.timestamps()[i]);
  }

  SuiteOutput out;
  out.files.push_back(out_dir / file.path);
  out.manifest = out_dir / "manifest.json";
  write_csv(out.files.front(), m, "config_hash=" + hash);

  DatasetManifest manifest;
  manifest.scenario = scenario;
  manifest.cell_type = s.cell_type;
  manifest.files.push_back(std::move(file));
  manifest.config_hash = hash;
  manifest.save(out.manifest);
  return out;
}

}  // namespace socsense
