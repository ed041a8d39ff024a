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

#include "socsense/signals/channels.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "socsense/error.hpp"

namespace socsense {
namespace {

struct ChannelInfo {
  ChannelId id;
  std::string_view symbol;
  std::string_view column;  // empty for derived channels
};

constexpr std::array<ChannelInfo, 13> kInfo{{
    {ChannelId::current, "I", "current_a"},
    {ChannelId::voltage, "V", "voltage_v"},
    {ChannelId::expansion, "E", "expansion_um"},
    {ChannelId::temp_surface, "T", "temp_surface_c"},
    {ChannelId::temp_hf, "T_HF", ""},
    {ChannelId::temp_lf, "T_LF", ""},
    {ChannelId::intensity, "Phi", "intensity_au"},
    {ChannelId::wavelength, "lambda", "wavelength_nm"},
    {ChannelId::cathode, "psi", "cathode_v"},
    {ChannelId::anode, "eta", "anode_v"},
    {ChannelId::force, "F", "force_n"},
    {ChannelId::temp_internal, "T_in", "temp_internal_c"},
    {ChannelId::pressure, "P", "pressure_kpa"},
}};

const ChannelInfo& info(ChannelId id) {
  return kInfo[static_cast<std::size_t>(id)];
}

// Tokens accepted inside compact tags, longest spellings first.
constexpr std::array<std::pair<std::string_view, ChannelId>, 15> kTagTokens{{
    {"lambda", ChannelId::wavelength},
    {"Lambda", ChannelId::wavelength},
    {"T_in", ChannelId::temp_internal},
    {"Phi", ChannelId::intensity},
    {"psi", ChannelId::cathode},
    {"Psi", ChannelId::cathode},
    {"eta", ChannelId::anode},
    {"Eta", ChannelId::anode},
    {"Φ", ChannelId::intensity},   // Φ
    {"λ", ChannelId::wavelength},  // λ
    {"ψ", ChannelId::cathode},     // ψ
    {"η", ChannelId::anode},       // η
    {"V", ChannelId::voltage},
    {"I", ChannelId::current},
    {"E", ChannelId::expansion},
}};

void push_unique(std::vector<ChannelId>& out, ChannelId id, std::string_view text) {
  if (std::find(out.begin(), out.end(), id) != out.end()) {
    throw InputError("channel set '" + std::string(text) + "' lists " +
                     std::string(channel_symbol(id)) + " twice");
  }
  out.push_back(id);
}

}  // namespace

std::string_view channel_symbol(ChannelId id) { return info(id).symbol; }

std::optional<ChannelId> channel_from_symbol(std::string_view symbol) {
  for (const auto& c : kInfo) {
    if (c.symbol == symbol) return c.id;
  }
  for (const auto& [token, id] : kTagTokens) {
    if (token == symbol) return id;
  }
  return std::nullopt;
}

std::optional<std::string_view> channel_column(ChannelId id) {
  if (info(id).column.empty()) return std::nullopt;
  return info(id).column;
}

std::optional<ChannelId> channel_from_column(std::string_view column) {
  for (const auto& c : kInfo) {
    if (!c.column.empty() && c.column == column) return c.id;
  }
  return std::nullopt;
}

std::string join_symbols(std::span<const ChannelId> ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += channel_symbol(ids[i]);
  }
  return out;
}

ChannelSet ChannelSet::parse(std::string_view text) {
  ChannelSet set;
  set.tag = std::string(text);
  if (text.empty()) throw InputError("empty channel set");

  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view name = text.substr(start, end - start);
      while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
      while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
      auto id = channel_from_symbol(name);
      if (!id) throw InputError("unknown channel '" + std::string(name) + "' in '" + set.tag + "'");
      push_unique(set.members, *id, text);
      start = end + 1;
    }
    return set;
  }

  std::string_view rest = text;
  while (!rest.empty()) {
    // Bold T: surface temperature plus both decomposition components.
    if (rest.front() == 'T' && !rest.starts_with("T_in")) {
      for (ChannelId id : {ChannelId::temp_surface, ChannelId::temp_hf, ChannelId::temp_lf}) {
        push_unique(set.members, id, text);
      }
      rest.remove_prefix(1);
      continue;
    }
    bool matched = false;
    for (const auto& [token, id] : kTagTokens) {
      if (rest.starts_with(token)) {
        push_unique(set.members, id, text);
        rest.remove_prefix(token.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      if (rest.front() == 'F') {
        push_unique(set.members, ChannelId::force, text);
      } else if (rest.front() == 'P') {
        push_unique(set.members, ChannelId::pressure, text);
      } else {
        throw InputError("cannot parse channel set '" + set.tag + "' at '" + std::string(rest) +
                         "'");
      }
      rest.remove_prefix(1);
    }
  }
  return set;
}

}  // namespace socsense
