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
#include <string_view>

namespace socsense {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// FNV-1a of `canonical` as 16 lowercase hex digits. Callers hash a canonical
/// serialization (sorted-key JSON) of the configuration that produced an output.
std::string config_hash(std::string_view canonical);

/// Writes `text` to `path` through a temporary file and a rename, so a failed
/// command never leaves a truncated output behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace socsense
