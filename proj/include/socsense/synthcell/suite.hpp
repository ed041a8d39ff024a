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
#include <filesystem>
#include <string>
#include <vector>

#include "socsense/signals/manifest.hpp"
#include "socsense/synthcell/cell.hpp"

namespace socsense {

struct Scenario {
  std::string name;
  std::string cell_type;
  CellConfig cell;
  Protocol protocol;
};

inline constexpr const char* kScenarioNames[] = {"expansion-cell", "optical-cell", "force-cell"};

/// Displacement-sensor pouch cell: CC 1.5C to 4.2 V, CV to C/50, drive-cycle
/// discharge to 50% depth of discharge. Channels I, V, E, T.
Scenario expansion_cell_scenario(std::uint64_t seed = 42);
/// Fiber-optic pouch cell: CV 4.2 V to C/20, CC 1.5C discharge to 2.7 V, 10 min
/// rest. Channels I, V, Phi, lambda.
Scenario optical_cell_scenario(std::uint64_t seed = 42);
/// Instrumented coin cell: CC 0.5C to 4.2 V, CV to C/50, 10 min rest, DST to
/// 2.5 V. Channels I, V, psi, eta, F, T_in, P.
Scenario force_cell_scenario(std::uint64_t seed = 42);

/// Throws InputError listing valid names.
Scenario scenario_by_name(const std::string& name, std::uint64_t seed = 42);

struct SuiteOutput {
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> files;
};

/// Simulates the scenario and writes `<name>.csv` plus `manifest.json` into
/// `out_dir`. Output is byte-identical for identical arguments.
SuiteOutput generate_suite(const std::string& scenario, const std::filesystem::path& out_dir,
                           std::size_t cycles, std::uint64_t seed = 42,
                           const std::string& config_hash = {});

}  // namespace socsense
