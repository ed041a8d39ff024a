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

#include <filesystem>
#include <string>
#include <vector>

#include "socsense/signals/csv.hpp"

namespace socsense {

struct ManifestFile {
  std::filesystem::path path;  // relative to the manifest directory
  std::size_t cycles = 0;
  std::vector<double> cycle_boundaries_s;  // start time of each cycle
};

struct DatasetManifest {
  std::string scenario;
  std::string cell_type;
  std::vector<ManifestFile> files;
  std::string config_hash;

  static DatasetManifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

/// Loads every file listed in the manifest and concatenates them in order.
SignalMatrix load_dataset(const std::filesystem::path& manifest_path, const CsvSchema& schema);

}  // namespace socsense
