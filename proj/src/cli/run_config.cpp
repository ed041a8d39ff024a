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

#include "socsense/cli/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "socsense/error.hpp"
#include "socsense/provenance.hpp"

namespace socsense::cli {

using nlohmann::json;

const std::vector<std::string>& run_config_keys() {
  static const std::vector<std::string> keys{
      "dataset",       "channels",     "window",        "intervals",      "hidden",
      "layers",        "max_epochs",   "patience",      "learning_rate",  "beta1",
      "beta2",         "epsilon",      "clip_norm",     "batch_size",     "validation_fraction",
      "split",         "train_fraction", "sample_period_s", "max_gap_s",  "missing",
      "tau_s",         "steady_threshold", "output",    "seed",           "extra_seeds",
      "baseline"};
  return keys;
}

namespace {

template <class T>
void read(const json& j, const char* key, T& into) {
  if (!j.contains(key)) return;
  try {
    into = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

RunConfig RunConfig::from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  const auto& keys = run_config_keys();
  for (const auto& [key, value] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InputError("unknown config key '" + key + "'");
    }
  }
  RunConfig c;
  std::string dataset;
  read(j, "dataset", dataset);
  if (!dataset.empty()) {
    c.dataset = dataset;
    if (c.dataset.is_relative() && !base_dir.empty()) c.dataset = base_dir / c.dataset;
  }
  if (j.contains("channels")) {
    if (j["channels"].is_string()) {
      c.channel_sets = {j["channels"].get<std::string>()};
    } else {
      read(j, "channels", c.channel_sets);
    }
  }
  ExperimentConfig& e = c.experiment;
  read(j, "window", e.window);
  read(j, "intervals", c.intervals);
  read(j, "hidden", e.hidden);
  read(j, "layers", e.layers);
  read(j, "max_epochs", e.train.max_epochs);
  read(j, "patience", e.train.patience);
  read(j, "learning_rate", e.train.adam.learning_rate);
  read(j, "beta1", e.train.adam.beta1);
  read(j, "beta2", e.train.adam.beta2);
  read(j, "epsilon", e.train.adam.epsilon);
  read(j, "clip_norm", e.train.clip_norm);
  read(j, "batch_size", e.train.batch_size);
  read(j, "validation_fraction", e.train.validation_fraction);
  std::string split = "chronological";
  read(j, "split", split);
  if (split == "chronological") {
    e.split = SplitMode::chronological;
  } else if (split == "by_cycle") {
    e.split = SplitMode::by_cycle;
  } else {
    throw InputError("config key 'split' must be chronological or by_cycle");
  }
  read(j, "train_fraction", e.train_fraction);
  read(j, "sample_period_s", c.sample_period_s);
  read(j, "max_gap_s", c.max_gap_s);
  std::string missing = "reject";
  read(j, "missing", missing);
  if (missing == "reject") {
    c.missing = MissingValuePolicy::reject;
  } else if (missing == "interpolate") {
    c.missing = MissingValuePolicy::interpolate;
  } else {
    throw InputError("config key 'missing' must be reject or interpolate");
  }
  read(j, "tau_s", e.tau_s);
  read(j, "steady_threshold", e.steady_threshold);
  std::string output;
  read(j, "output", output);
  if (!output.empty()) c.output = output;
  read(j, "seed", e.train.seed);
  read(j, "extra_seeds", c.extra_seeds);
  read(j, "baseline", c.baseline);
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("config " + path.string() + ": " + e.what());
  }
  return from_json(j, path.parent_path());
}

json RunConfig::to_json() const {
  const ExperimentConfig& e = experiment;
  // nlohmann::json objects keep keys sorted, so dump() is canonical.
  return {{"dataset", dataset.generic_string()},
          {"channels", channel_sets},
          {"window", e.window},
          {"intervals", intervals},
          {"hidden", e.hidden},
          {"layers", e.layers},
          {"max_epochs", e.train.max_epochs},
          {"patience", e.train.patience},
          {"learning_rate", e.train.adam.learning_rate},
          {"beta1", e.train.adam.beta1},
          {"beta2", e.train.adam.beta2},
          {"epsilon", e.train.adam.epsilon},
          {"clip_norm", e.train.clip_norm},
          {"batch_size", e.train.batch_size},
          {"validation_fraction", e.train.validation_fraction},
          {"split", e.split == SplitMode::chronological ? "chronological" : "by_cycle"},
          {"train_fraction", e.train_fraction},
          {"sample_period_s", sample_period_s},
          {"max_gap_s", max_gap_s},
          {"missing", missing == MissingValuePolicy::reject ? "reject" : "interpolate"},
          {"tau_s", e.tau_s},
          {"steady_threshold", e.steady_threshold},
          {"output", output.generic_string()},
          {"seed", e.train.seed},
          {"extra_seeds", extra_seeds},
          {"baseline", baseline}};
}

void RunConfig::validate() const {
  if (channel_sets.empty()) throw InputError("config needs at least one channel set");
  std::set<std::string> tags;
  for (const auto& s : channel_sets) {
    const ChannelSet parsed = ChannelSet::parse(s);
    if (!tags.insert(parsed.tag).second) throw InputError("duplicate channel set " + parsed.tag);
  }
  if (experiment.window == 0) throw InputError("window must be at least 1");
  if (intervals == 0) throw InputError("intervals must be at least 1");
  if (experiment.hidden == 0) throw InputError("hidden must be at least 1");
  if (experiment.layers == 0) throw InputError("layers must be at least 1");
  if (!(experiment.train_fraction > 0.0 && experiment.train_fraction < 1.0)) {
    throw InputError("train_fraction must lie in (0, 1)");
  }
  if (!(sample_period_s > 0)) throw InputError("sample_period_s must be positive");
  if (!(max_gap_s > 0)) throw InputError("max_gap_s must be positive");
  if (!(experiment.tau_s > 0)) throw InputError("tau_s must be positive");
  if (!(experiment.steady_threshold > 0)) throw InputError("steady_threshold must be positive");
  experiment.train.validate();
}

CsvSchema RunConfig::schema() const {
  CsvSchema s = CsvSchema::canonical();
  s.sample_period_s = sample_period_s;
  s.max_gap_s = max_gap_s;
  s.missing = missing;
  return s;
}

std::string RunConfig::hash() const {
  json j = to_json();
  j.erase("output");  // where results go does not change them
  return config_hash(j.dump());
}

}  // namespace socsense::cli
