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

#include "socsense/lstm/checkpoint.hpp"

#include "socsense/error.hpp"

namespace socsense {

using nlohmann::json;

namespace {

constexpr const char* kGateNames[kGateCount] = {"input", "forget", "cell", "output"};

json to_array(std::span<const double> values) { return json(std::vector<double>(values.begin(), values.end())); }

void read_array(const json& j, std::span<double> out, const std::string& what) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != out.size()) {
    throw InputError("checkpoint field " + what + " has " + std::to_string(v.size()) +
                     " values, expected " + std::to_string(out.size()));
  }
  std::copy(v.begin(), v.end(), out.begin());
}

}  // namespace

json model_to_json(const LstmModel& model) {
  json channels = json::array();
  for (ChannelId id : model.channels()) channels.push_back(std::string(channel_symbol(id)));
  json layers = json::array();
  for (std::size_t l = 0; l < model.layer_count(); ++l) {
    const auto p = model.layer(l);
    json gates = json::object();
    for (std::size_t g = 0; g < kGateCount; ++g) {
      const Gate gate = static_cast<Gate>(g);
      gates[kGateNames[g]] = {{"w_input", to_array(p.input_weights(gate).flat())},
                              {"w_recurrent", to_array(p.recurrent_weights(gate).flat())},
                              {"bias", to_array(p.gate_bias(gate))}};
    }
    layers.push_back({{"input_dim", p.input_dim}, {"gates", gates}});
  }
  return {{"hidden", model.hidden()},
          {"channels", channels},
          {"layers", layers},
          {"projection",
           {{"weights", to_array(model.projection_weights())},
            {"bias", model.projection_bias()}}}};
}

LstmModel model_from_json(const json& j) {
  try {
    std::vector<ChannelId> channels;
    for (const auto& c : j.at("channels")) {
      const auto name = c.get<std::string>();
      auto id = channel_from_symbol(name);
      if (!id) throw InputError("checkpoint: unknown channel '" + name + "'");
      channels.push_back(*id);
    }
    const auto& layers = j.at("layers");
    LstmModel model(channels, j.at("hidden").get<std::size_t>(), layers.size());
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const auto p = model.layer(l);
      if (layers[l].at("input_dim").get<std::size_t>() != p.input_dim) {
        throw InputError("checkpoint: layer " + std::to_string(l + 1) + " input_dim mismatch");
      }
      for (std::size_t g = 0; g < kGateCount; ++g) {
        const Gate gate = static_cast<Gate>(g);
        const auto& gj = layers[l].at("gates").at(kGateNames[g]);
        const std::string where = "layers[" + std::to_string(l) + "]." + kGateNames[g];
        read_array(gj.at("w_input"), p.input_weights(gate).flat(), where + ".w_input");
        read_array(gj.at("w_recurrent"), p.recurrent_weights(gate).flat(), where + ".w_recurrent");
        read_array(gj.at("bias"), p.gate_bias(gate), where + ".bias");
      }
    }
    read_array(j.at("projection").at("weights"), model.projection_weights(), "projection.weights");
    model.projection_bias() = j.at("projection").at("bias").get<double>();
    return model;
  } catch (const json::exception& e) {
    throw InputError(std::string("checkpoint: ") + e.what());
  }
}

}  // namespace socsense
