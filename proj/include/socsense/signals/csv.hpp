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
#include <map>
#include <string>

#include "socsense/signals/signal_matrix.hpp"

namespace socsense {

enum class MissingValuePolicy { reject, interpolate };

/// How a CSV file maps onto channels and how it is regularised.
struct CsvSchema {
  /// Column name -> channel. Defaults to the canonical column names.
  std::map<std::string, ChannelId> columns;
  std::string time_column = "time_s";
  std::string soc_column = "soc";
  std::string cycle_column = "cycle";
  std::string phase_column = "phase";
  double sample_period_s = 1.0;
  /// Largest tolerated spacing between consecutive source timestamps.
  double max_gap_s = 60.0;
  MissingValuePolicy missing = MissingValuePolicy::reject;
  /// Reject values outside plausible physical ranges for their unit.
  bool check_units = true;

  static CsvSchema canonical();
};

struct CsvLoadReport {
  std::size_t source_rows = 0;
  std::size_t output_rows = 0;
  std::size_t interpolated_values = 0;
};

/// Parses a header-bound CSV, validates it and resamples every column onto a
/// uniform grid starting at the first timestamp. Lines starting with '#' are
/// comments.
SignalMatrix load_csv(const std::filesystem::path& path, const CsvSchema& schema,
                      CsvLoadReport* report = nullptr);
SignalMatrix parse_csv(std::string_view text, const CsvSchema& schema,
                       CsvLoadReport* report = nullptr);

/// Writes `matrix` using canonical column names; derived channels are skipped.
/// `comment`, if non-empty, is emitted as a leading '# ' line.
void write_csv(const std::filesystem::path& path, const SignalMatrix& matrix,
               const std::string& comment = {});

}  // namespace socsense
