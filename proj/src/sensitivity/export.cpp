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

#include "socsense/sensitivity/export.hpp"

#include <charconv>

#include "socsense/error.hpp"
#include "socsense/provenance.hpp"

namespace socsense {

using nlohmann::json;

void write_profile_csv(const std::filesystem::path& path, const SensitivityProfile& profile,
                       const std::string& comment) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += "k,time_s,phase";
  for (ChannelId id : profile.channels) {
    out += ",phi_";
    out += channel_symbol(id);
  }
  out += '\n';
  char buf[32];
  auto num = [&](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
  };
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out += std::to_string(profile.steps[i]);
    out += ',';
    num(profile.times[i]);
    out += ',';
    if (profile.phases) out += (*profile.phases)[i];
    for (std::size_t c = 0; c < profile.channels.size(); ++c) {
      out += ',';
      num(profile.values(c, i));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

json summary_to_json(const SensitivitySummary& summary) {
  json channels = json::array();
  for (const auto& s : summary.channels) {
    channels.push_back({{"channel", std::string(channel_symbol(s.channel))},
                        {"mean", s.mean},
                        {"median", s.median},
                        {"q1", s.q1},
                        {"q3", s.q3},
                        {"min", s.min},
                        {"max", s.max}});
  }
  json ranking = json::array();
  for (ChannelId id : summary.ranking) ranking.push_back(std::string(channel_symbol(id)));
  return {{"channels", channels}, {"ranking", ranking}};
}

json partition_to_json(const IntervalPartition& p) {
  return {{"channel", std::string(channel_symbol(p.channel))},
          {"bounds", p.bounds},
          {"means", p.means},
          {"probabilities", p.probabilities}};
}

IntervalPartition partition_from_json(const json& j) {
  IntervalPartition p;
  const auto name = j.at("channel").get<std::string>();
  auto id = channel_from_symbol(name);
  if (!id) throw InputError("partition: unknown channel '" + name + "'");
  p.channel = *id;
  p.bounds = j.at("bounds").get<std::vector<double>>();
  p.means = j.at("means").get<std::vector<double>>();
  p.probabilities = j.at("probabilities").get<std::vector<double>>();
  if (p.means.empty() || p.bounds.size() != p.means.size() + 1 ||
      p.probabilities.size() != p.means.size()) {
    throw InputError("partition for " + name + " has inconsistent sizes");
  }
  return p;
}

}  // namespace socsense
