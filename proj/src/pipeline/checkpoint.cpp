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

#include "socsense/pipeline/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "socsense/error.hpp"
#include "socsense/lstm/checkpoint.hpp"
#include "socsense/provenance.hpp"
#include "socsense/sensitivity/export.hpp"

namespace socsense {

using nlohmann::json;

json normalization_to_json(const Normalization& map) {
  json out = json::array();
  for (const auto& c : map.channels) {
    out.push_back({{"channel", channel_symbol(c.channel)},
                   {"min", c.min},
                   {"max", c.max},
                   {"degenerate", c.degenerate}});
  }
  return out;
}

Normalization normalization_from_json(const json& j) {
  Normalization map;
  for (const auto& c : j) {
    ChannelScaling s;
    const auto name = c.at("channel").get<std::string>();
    const auto id = channel_from_symbol(name);
    if (!id) throw InputError("normalization: unknown channel '" + name + "'");
    s.channel = *id;
    s.min = c.at("min").get<double>();
    s.max = c.at("max").get<double>();
    s.degenerate = c.at("degenerate").get<bool>();
    map.channels.push_back(s);
  }
  return map;
}

json Checkpoint::to_json() const {
  json parts = json::array();
  for (const auto& p : partitions) parts.push_back(partition_to_json(p));
  return {{"format", "socsense-checkpoint"},
          {"version", 1},
          {"config_hash", config_hash},
          {"channel_set", channel_tag},
          {"window", window},
          {"sample_period_s", sample_period_s},
          {"tau_s", tau_s},
          {"final_train_mae", final_train_mae},
          {"normalization", normalization_to_json(normalization)},
          {"partitions", parts},
          {"model", model_to_json(model)},
          {"extra", extra}};
}

Checkpoint Checkpoint::from_json(const json& j) {
  try {
    if (j.value("format", "") != "socsense-checkpoint") {
      throw InputError("not a checkpoint file");
    }
    Checkpoint c;
    c.config_hash = j.at("config_hash").get<std::string>();
    c.channel_tag = j.at("channel_set").get<std::string>();
    c.window = j.at("window").get<std::size_t>();
    c.sample_period_s = j.at("sample_period_s").get<double>();
    c.tau_s = j.at("tau_s").get<double>();
    c.final_train_mae = j.at("final_train_mae").get<double>();
    c.normalization = normalization_from_json(j.at("normalization"));
    for (const auto& p : j.at("partitions")) c.partitions.push_back(partition_from_json(p));
    c.model = model_from_json(j.at("model"));
    c.extra = j.value("extra", json::object());
    if (c.normalization.channels.size() != c.model.channels().size()) {
      throw InputError("checkpoint normalization does not match model channels");
    }
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed checkpoint: ") + e.what());
  }
}

void Checkpoint::save(const std::filesystem::path& path) const {
  write_file_atomic(path, to_json().dump(1) + "\n");
}

Checkpoint Checkpoint::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open checkpoint " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("checkpoint " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

std::vector<IntervalPartition> training_partitions(const SignalMatrix& matrix,
                                                   const std::vector<ChannelId>& channels,
                                                   std::size_t row_begin, std::size_t row_end,
                                                   std::size_t intervals) {
  if (row_begin >= row_end || row_end > matrix.steps()) {
    throw ShapeError("partition row range out of bounds");
  }
  std::vector<IntervalPartition> out;
  for (ChannelId c : channels) {
    const auto col = matrix.column(c);
    out.push_back(build_partition(
        c, std::span<const double>(col).subspan(row_begin, row_end - row_begin), intervals));
  }
  return out;
}

}  // namespace socsense
