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
#include <string>
#include <string_view>
#include <vector>

namespace socsense {

/// Measured and derived signal identities.
enum class ChannelId {
  current,         // I
  voltage,         // V
  expansion,       // E
  temp_surface,    // T
  temp_hf,         // T_HF, derived
  temp_lf,         // T_LF, derived
  intensity,       // Φ
  wavelength,      // λ
  cathode,         // ψ
  anode,           // η
  force,           // F
  temp_internal,   // T_in
  pressure,        // P
};

inline constexpr ChannelId kAllChannels[] = {
    ChannelId::current,   ChannelId::voltage,   ChannelId::expansion, ChannelId::temp_surface,
    ChannelId::temp_hf,   ChannelId::temp_lf,   ChannelId::intensity, ChannelId::wavelength,
    ChannelId::cathode,   ChannelId::anode,     ChannelId::force,     ChannelId::temp_internal,
    ChannelId::pressure};

/// Short symbol used in tags, checkpoints and profile headers ("V", "T_HF", "eta", ...).
std::string_view channel_symbol(ChannelId id);
std::optional<ChannelId> channel_from_symbol(std::string_view symbol);

/// Canonical CSV column name ("voltage_v", ...); derived channels have none.
std::optional<std::string_view> channel_column(ChannelId id);
std::optional<ChannelId> channel_from_column(std::string_view column);

std::string join_symbols(std::span<const ChannelId> ids);

/// A named combination of channels such as VI or VIET.
struct ChannelSet {
  std::string tag;
  std::vector<ChannelId> members;

  /// Parses compact tags (VI, ET, VIT, VIE, VIET, VIΦλ, VIηF and their ASCII
  /// spellings VIPhiLambda, VIetaF) or a comma list of channel symbols
  /// ("V,I,T"). In compact tags T stands for the composite {T, T_HF, T_LF}.
  static ChannelSet parse(std::string_view text);
};

}  // namespace socsense
