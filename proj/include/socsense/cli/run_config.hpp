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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "socsense/evaluation/ablation.hpp"
#include "socsense/sensitivity/partition.hpp"
#include "socsense/signals/csv.hpp"

namespace socsense::cli {

/// Settings for `train` and `ablate`, read from one JSON object.
struct RunConfig {
  std::filesystem::path dataset;  // manifest; relative paths resolve against the config file
  std::vector<std::string> channel_sets{"VI"};
  std::size_t intervals = kDefaultIntervals;
  ExperimentConfig experiment;
  double sample_period_s = 1.0;
  double max_gap_s = 60.0;
  MissingValuePolicy missing = MissingValuePolicy::reject;
  std::filesystem::path output = "out";
  std::string baseline = "VI";
  std::vector<std::uint64_t> extra_seeds;

  /// Throws InputError naming the offending key; unknown keys are rejected.
  static RunConfig from_json(const nlohmann::json& j,
                             const std::filesystem::path& base_dir = {});
  static RunConfig load(const std::filesystem::path& path);
  /// Sorted-key serialization of every field; the provenance hash input.
  nlohmann::json to_json() const;

  void validate() const;
  CsvSchema schema() const;
  std::string hash() const;
};

/// Lists the accepted config keys.
const std::vector<std::string>& run_config_keys();

}  // namespace socsense::cli
