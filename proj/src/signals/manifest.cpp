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

#include "socsense/signals/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "socsense/error.hpp"
#include "socsense/provenance.hpp"

namespace socsense {

using nlohmann::json;

DatasetManifest DatasetManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path.string());
  json j;
  try {
    in >> j;
    DatasetManifest m;
    m.scenario = j.value("scenario", "");
    m.cell_type = j.value("cell_type", "");
    m.config_hash = j.value("config_hash", "");
    for (const auto& f : j.at("files")) {
      ManifestFile mf;
      mf.path = f.at("path").get<std::string>();
      mf.cycles = f.value("cycles", std::size_t{0});
      mf.cycle_boundaries_s = f.value("cycle_boundaries_s", std::vector<double>{});
      m.files.push_back(std::move(mf));
    }
    if (m.files.empty()) throw InputError("manifest lists no files");
    return m;
  } catch (const json::exception& e) {
    throw InputError("manifest " + path.string() + ": " + e.what());
  }
}

void DatasetManifest::save(const std::filesystem::path& path) const {
  json files = json::array();
  for (const auto& f : this->files) {
    files.push_back({{"path", f.path.generic_string()},
                     {"cycles", f.cycles},
                     {"cycle_boundaries_s", f.cycle_boundaries_s}});
  }
  json j{{"scenario", scenario},
         {"cell_type", cell_type},
         {"files", files},
         {"config_hash", config_hash}};
  write_file_atomic(path, j.dump(2) + "\n");
}

SignalMatrix load_dataset(const std::filesystem::path& manifest_path, const CsvSchema& schema) {
  const DatasetManifest m = DatasetManifest::load(manifest_path);
  const auto dir = manifest_path.parent_path();
  std::vector<SignalMatrix> parts;
  for (const auto& f : m.files) {
    const auto p = f.path.is_absolute() ? f.path : dir / f.path;
    if (!std::filesystem::exists(p)) throw InputError("dataset file not found: " + p.string());
    parts.push_back(load_csv(p, schema));
  }
  if (parts.size() == 1) return std::move(parts.front());

  const auto& first = parts.front();
  std::vector<double> t;
  std::size_t total = 0;
  for (const auto& p : parts) {
    if (p.channels() != first.channels()) {
      throw InputError("manifest files disagree on channels: " + join_symbols(first.channels()) +
                       " vs " + join_symbols(p.channels()));
    }
    if (p.soc().has_value() != first.soc().has_value() ||
        p.cycle().has_value() != first.cycle().has_value() ||
        p.phase().has_value() != first.phase().has_value()) {
      throw InputError("manifest files disagree on label/cycle/phase columns");
    }
    total += p.steps();
  }
  Matrix values(total, first.channel_count());
  std::vector<double> soc;
  std::vector<int> cycle;
  std::vector<std::string> phase;
  std::size_t row = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.steps(); ++r, ++row) {
      t.push_back(p.timestamps()[r]);
      for (std::size_t c = 0; c < p.channel_count(); ++c) values(row, c) = p.values()(r, c);
      if (p.soc()) soc.push_back((*p.soc())[r]);
      if (p.cycle()) cycle.push_back((*p.cycle())[r]);
      if (p.phase()) phase.push_back((*p.phase())[r]);
    }
  }
  SignalMatrix out(std::move(t), first.channels(), std::move(values));
  if (first.soc()) out.set_soc(std::move(soc));
  if (first.cycle()) out.set_cycle(std::move(cycle));
  if (first.phase()) out.set_phase(std::move(phase));
  return out;
}

}  // namespace socsense
