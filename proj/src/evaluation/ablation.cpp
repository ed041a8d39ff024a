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

#include "socsense/evaluation/ablation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "socsense/error.hpp"
#include "socsense/lstm/forward.hpp"
#include "socsense/provenance.hpp"
#include "socsense/signals/decompose.hpp"

namespace socsense {

using nlohmann::json;

namespace {

bool needs_components(const ChannelSet& set) {
  return std::any_of(set.members.begin(), set.members.end(), [](ChannelId c) {
    return c == ChannelId::temp_hf || c == ChannelId::temp_lf;
  });
}

void check_channels(const SignalMatrix& matrix, const ChannelSet& set) {
  for (ChannelId c : set.members) {
    const bool derived = c == ChannelId::temp_hf || c == ChannelId::temp_lf;
    const ChannelId source = derived ? ChannelId::temp_surface : c;
    if (!matrix.has_channel(c) && !matrix.has_channel(source)) {
      throw InputError("channel set " + set.tag + " needs " + std::string(channel_symbol(c)) +
                       " but the data provides " + join_symbols(matrix.channels()));
    }
  }
}

json experiment_to_json(const ExperimentConfig& c) {
  return {{"window", c.window},
          {"hidden", c.hidden},
          {"layers", c.layers},
          {"max_epochs", c.train.max_epochs},
          {"patience", c.train.patience},
          {"learning_rate", c.train.adam.learning_rate},
          {"beta1", c.train.adam.beta1},
          {"beta2", c.train.adam.beta2},
          {"epsilon", c.train.adam.epsilon},
          {"clip_norm", c.train.clip_norm},
          {"batch_size", c.train.batch_size},
          {"validation_fraction", c.train.validation_fraction},
          {"seed", c.train.seed},
          {"split", c.split == SplitMode::chronological ? "chronological" : "by_cycle"},
          {"train_fraction", c.train_fraction},
          {"tau_s", c.tau_s},
          {"steady_threshold", c.steady_threshold}};
}

}  // namespace

SignalMatrix prepare_channels(const SignalMatrix& matrix, const ChannelSet& set, double tau_s) {
  check_channels(matrix, set);
  SignalMatrix out = matrix;
  if (needs_components(set)) add_temperature_components(out, tau_s);
  return out;
}

FittedChannelSet fit_channel_set(const SignalMatrix& matrix, const ChannelSet& set,
                                 const ExperimentConfig& config, std::uint64_t seed,
                                 const EpochCallback& on_epoch) {
  check_channels(matrix, set);
  const SignalMatrix* source = &matrix;
  SignalMatrix augmented;
  if (needs_components(set) && !(matrix.has_channel(ChannelId::temp_hf) &&
                                 matrix.has_channel(ChannelId::temp_lf))) {
    augmented = prepare_channels(matrix, set, config.tau_s);
    source = &augmented;
  }

  const WindowedDataset windows = make_windows(*source, set, config.window);
  const auto [train_range, test_range] =
      split_ranges(windows, config.split, config.train_fraction);
  if (train_range.size() == 0 || test_range.size() == 0) {
    throw InputError("split leaves an empty training or test set (" +
                     std::to_string(windows.size()) + " samples)");
  }
  const WindowedDataset normalized = normalize(windows, train_range);
  const WindowedDataset train_set = normalized.subset(train_range);
  const WindowedDataset test_set = normalized.subset(test_range);

  TrainConfig tc = config.train;
  tc.seed = seed;
  const LstmModel initial = LstmModel::initialized(set.members, config.hidden, seed, config.layers);

  FittedChannelSet out;
  out.channel_set = set;
  out.training = train(initial, train_set, tc, on_epoch);
  out.model = out.training.model;
  out.normalization = normalized.normalization();
  out.train_range = train_range;
  out.test_range = test_range;
  out.train_row_begin = windows.end_row(train_range.begin) + 1 - config.window;
  out.train_row_end = windows.end_row(train_range.end - 1) + 1;

  const auto train_pred = predict_all(out.model, train_set);
  out.final_train_mae = mae(train_set.targets(), train_pred);

  out.test_predictions = predict_all(out.model, test_set);
  out.test_targets.assign(test_set.targets().begin(), test_set.targets().end());
  out.test_times.resize(test_set.size());
  for (std::size_t i = 0; i < test_set.size(); ++i) out.test_times[i] = test_set.time(i);
  out.test_report =
      evaluate_predictions(out.test_targets, out.test_predictions, config.steady_threshold);
  return out;
}

AblationReport run_ablation(const SignalMatrix& matrix, const AblationConfig& config,
                            const AblationProgress& progress) {
  if (config.channel_sets.empty()) throw InputError("ablation needs at least one channel set");
  std::set<std::string> tags;
  for (const auto& s : config.channel_sets) {
    if (!tags.insert(s.tag).second) throw InputError("duplicate channel set tag " + s.tag);
    check_channels(matrix, s);
  }
  config.experiment.train.validate();

  AblationReport report;
  report.baseline = tags.count(config.baseline) ? config.baseline : config.channel_sets.front().tag;

  json canonical = experiment_to_json(config.experiment);
  json sets = json::array();
  for (const auto& s : config.channel_sets) sets.push_back(s.tag);
  canonical["channel_sets"] = sets;
  canonical["baseline"] = report.baseline;
  canonical["extra_seeds"] = config.extra_seeds;
  report.config_hash = config_hash(canonical.dump());

  for (const auto& set : config.channel_sets) {
    const std::uint64_t seed = config.experiment.train.seed;
    if (progress) progress(set.tag, seed);
    AblationResult r;
    r.tag = set.tag;
    r.fit = fit_channel_set(matrix, set, config.experiment, seed);
    r.report = r.fit.test_report;
    r.best_epoch = r.fit.training.best_epoch;
    r.epochs_run = r.fit.training.history.size();
    r.seed_mae.push_back(r.report.mae);
    for (std::uint64_t extra : config.extra_seeds) {
      if (progress) progress(set.tag, extra);
      r.seed_mae.push_back(fit_channel_set(matrix, set, config.experiment, extra).test_report.mae);
    }
    const double n = static_cast<double>(r.seed_mae.size());
    double sum = 0.0;
    for (double m : r.seed_mae) sum += m;
    r.mae_mean = sum / n;
    double ss = 0.0;
    for (double m : r.seed_mae) ss += (m - r.mae_mean) * (m - r.mae_mean);
    r.mae_spread = r.seed_mae.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    report.results.push_back(std::move(r));
  }

  const auto base = std::find_if(report.results.begin(), report.results.end(),
                                 [&](const AblationResult& r) { return r.tag == report.baseline; });
  const double base_mae = base->report.mae;
  for (auto& r : report.results) {
    r.improvement = base_mae > 0 ? (base_mae - r.report.mae) / base_mae : 0.0;
  }
  std::stable_sort(report.results.begin(), report.results.end(),
                   [](const AblationResult& a, const AblationResult& b) {
                     return a.report.mae < b.report.mae;
                   });
  return report;
}

json metric_report_to_json(const MetricReport& r) {
  json steady{{"converged", r.steady.converged()}, {"samples", r.steady.count}};
  if (r.steady.converged()) {
    steady["start_index"] = *r.steady.start;
    steady["mae"] = r.steady.mae;
    steady["rmse"] = r.steady.rmse;
  }
  return {{"mae", r.mae}, {"rmse", r.rmse}, {"samples", r.samples}, {"steady_state", steady}};
}

json ablation_report_to_json(const AblationReport& report) {
  json results = json::array();
  for (const auto& r : report.results) {
    json j = metric_report_to_json(r.report);
    j["channel_set"] = r.tag;
    j["channels"] = join_symbols(r.fit.channel_set.members);
    j["improvement"] = r.improvement;
    j["best_epoch"] = r.best_epoch;
    j["epochs_run"] = r.epochs_run;
    j["final_train_mae"] = r.fit.final_train_mae;
    j["seed_mae"] = r.seed_mae;
    j["mae_mean"] = r.mae_mean;
    j["mae_spread"] = r.mae_spread;
    results.push_back(std::move(j));
  }
  return {{"baseline", report.baseline}, {"results", results}, {"config_hash", report.config_hash}};
}

void write_error_trajectories(const std::filesystem::path& path, const AblationReport& report) {
  if (report.results.empty()) throw InputError("empty ablation report");
  const auto& first = report.results.front().fit;
  for (const auto& r : report.results) {
    if (r.fit.test_times != first.test_times) {
      throw ShapeError("ablation legs disagree on test samples");
    }
  }
  std::string out = "# config_hash=" + report.config_hash + "\ntime_s,soc";
  for (const auto& r : report.results) out += ",err_" + r.tag;
  out += '\n';
  char buf[32];
  auto num = [&](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
  };
  for (std::size_t i = 0; i < first.test_times.size(); ++i) {
    num(first.test_times[i]);
    out += ',';
    num(first.test_targets[i]);
    for (const auto& r : report.results) {
      out += ',';
      num(r.report.errors[i]);
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

}  // namespace socsense
