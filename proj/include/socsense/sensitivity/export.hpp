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

#include <json.hpp>

#include "socsense/sensitivity/partition.hpp"
#include "socsense/sensitivity/sensitivity.hpp"

namespace socsense {

/// CSV with columns k, time_s, phase, phi_<channel>...
void write_profile_csv(const std::filesystem::path& path, const SensitivityProfile& profile,
                       const std::string& comment = {});
nlohmann::json summary_to_json(const SensitivitySummary& summary);

nlohmann::json partition_to_json(const IntervalPartition& partition);
IntervalPartition partition_from_json(const nlohmann::json& j);

}  // namespace socsense
