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

#include "socsense/cli/cli.hpp"

#include <charconv>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "socsense/cli/run_config.hpp"
#include "socsense/error.hpp"
#include "socsense/evaluation/ablation.hpp"
#include "socsense/lstm/forward.hpp"
#include "socsense/pipeline/checkpoint.hpp"
#include "socsense/provenance.hpp"
#include "socsense/sensitivity/export.hpp"
#include "socsense/signals/decompose.hpp"
#include "socsense/signals/manifest.hpp"
#include "socsense/synthcell/suite.hpp"

namespace socsense::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::string num(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

fs::path output_dir(const GlobalOptions& g, const fs::path& fallback) {
  return g.out.empty() ? fallback : fs::path(g.out);
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::string loss_history_csv(const TrainResult& r, const std::string& hash) {
  std::string out = "# config_hash=" + hash + "\nepoch,train_loss,validation_loss\n";
  for (const auto& e : r.history) {
    out += std::to_string(e.epoch) + "," + num(e.train_loss) + "," + num(e.validation_loss) + "\n";
  }
  return out;
}

std::string errors_csv(std::span<const double> times, std::span<const double> targets,
                       std::span<const double> predictions, const std::string& hash) {
  std::string out = "# config_hash=" + hash + "\ntime_s,soc,prediction,error\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out += num(times[i]) + "," + num(targets[i]) + "," + num(predictions[i]) + "," +
           num(predictions[i] - targets[i]) + "\n";
  }
  return out;
}

// Dataset for applying a checkpoint: loads the manifest on the checkpoint's
// sampling grid and adds derived temperature channels when the model uses them.
SignalMatrix checkpoint_data(const Checkpoint& ckpt, const fs::path& manifest) {
  CsvSchema schema = CsvSchema::canonical();
  schema.sample_period_s = ckpt.sample_period_s;
  if (ckpt.extra.contains("max_gap_s")) schema.max_gap_s = ckpt.extra["max_gap_s"].get<double>();
  if (ckpt.extra.value("missing", "reject") == "interpolate") {
    schema.missing = MissingValuePolicy::interpolate;
  }
  SignalMatrix m = load_dataset(manifest, schema);
  std::vector<ChannelId> missing;
  for (ChannelId c : ckpt.model.channels()) {
    const bool derived = c == ChannelId::temp_hf || c == ChannelId::temp_lf;
    if (!m.has_channel(c) && !(derived && m.has_channel(ChannelId::temp_surface))) {
      missing.push_back(c);
    }
  }
  if (!missing.empty()) {
    throw InputError("checkpoint channels [" + join_symbols(ckpt.model.channels()) +
                     "] not available in dataset channels [" + join_symbols(m.channels()) + "]");
  }
  add_temperature_components(m, ckpt.tau_s);
  return m;
}

// Sample range selected by `subset`, using the split recorded at training time.
SampleRange subset_range(const Checkpoint& ckpt, const WindowedDataset& windows,
                         const std::string& subset) {
  if (subset == "all") return {0, windows.size()};
  const SplitMode mode =
      ckpt.extra.value("split", "chronological") == "by_cycle" ? SplitMode::by_cycle
                                                                : SplitMode::chronological;
  const auto [train, test] = split_ranges(windows, mode, ckpt.extra.value("train_fraction", 0.8));
  return subset == "train" ? train : test;
}

int cmd_synth(const GlobalOptions& g, const std::string& scenario, std::size_t cycles,
              std::ostream& out) {
  const std::uint64_t seed = g.seed.value_or(42);
  const fs::path dir = output_dir(g, fs::path("data") / scenario);
  const SuiteOutput s = generate_suite(scenario, dir, cycles, seed);
  for (const auto& f : s.files) out << f.string() << '\n';
  out << s.manifest.string() << '\n';
  return kExitOk;
}

RunConfig load_run_config(const GlobalOptions& g) {
  if (g.config.empty()) throw InputError("--config is required");
  RunConfig c = RunConfig::load(g.config);
  if (g.seed) c.experiment.train.seed = *g.seed;
  if (!g.out.empty()) c.output = g.out;
  if (c.dataset.empty()) throw InputError("config has no dataset");
  if (!fs::exists(c.dataset)) throw InputError("dataset manifest not found: " + c.dataset.string());
  return c;
}

int cmd_train(const GlobalOptions& g, const std::string& channels_override, bool verbose,
              std::ostream& out) {
  RunConfig cfg = load_run_config(g);
  if (!channels_override.empty()) cfg.channel_sets = {channels_override};
  cfg.validate();
  const std::string hash = cfg.hash();
  const SignalMatrix data = load_dataset(cfg.dataset, cfg.schema());

  struct Pending {
    fs::path dir;
    Checkpoint ckpt;
    std::string history;
    json report;
  };
  std::vector<Pending> pending;
  for (const auto& text : cfg.channel_sets) {
    const ChannelSet set = ChannelSet::parse(text);
    EpochCallback cb;
    if (verbose) {
      cb = [&out, &set](const EpochRecord& e) {
        if (e.epoch % 100 == 0) {
          out << set.tag << " epoch " << e.epoch << " train " << e.train_loss << " val "
              << e.validation_loss << '\n';
        }
        return true;
      };
    }
    const SignalMatrix prepared = prepare_channels(data, set, cfg.experiment.tau_s);
    FittedChannelSet fit =
        fit_channel_set(prepared, set, cfg.experiment, cfg.experiment.train.seed, cb);

    Pending p;
    p.dir = cfg.output / set.tag;
    Checkpoint& c = p.ckpt;
    c.model = fit.model;
    c.channel_tag = set.tag;
    c.window = cfg.experiment.window;
    c.sample_period_s = cfg.sample_period_s;
    c.tau_s = cfg.experiment.tau_s;
    c.normalization = fit.normalization;
    c.partitions = training_partitions(prepared, set.members, fit.train_row_begin,
                                       fit.train_row_end, cfg.intervals);
    c.final_train_mae = fit.final_train_mae;
    c.config_hash = hash;
    c.extra = {{"split", cfg.experiment.split == SplitMode::by_cycle ? "by_cycle" : "chronological"},
               {"train_fraction", cfg.experiment.train_fraction},
               {"max_gap_s", cfg.max_gap_s},
               {"missing", cfg.missing == MissingValuePolicy::reject ? "reject" : "interpolate"},
               {"best_epoch", fit.training.best_epoch}};
    p.history = loss_history_csv(fit.training, hash);
    p.report = metric_report_to_json(fit.test_report);
    p.report["channel_set"] = set.tag;
    p.report["config_hash"] = hash;
    p.report["final_train_mae"] = fit.final_train_mae;
    p.report["best_epoch"] = fit.training.best_epoch;
    p.report["epochs_run"] = fit.training.history.size();
    p.report["stopped_early"] = fit.training.stopped_early;
    out << set.tag << ": test MAE " << fit.test_report.mae << " RMSE " << fit.test_report.rmse
        << " (" << fit.test_report.samples << " samples, best epoch " << fit.training.best_epoch
        << ")\n";
    pending.push_back(std::move(p));
  }
  // Outputs are written only after every leg finished.
  for (const auto& p : pending) {
    make_dir(p.dir);
    p.ckpt.save(p.dir / "checkpoint.json");
    write_file_atomic(p.dir / "loss_history.csv", p.history);
    write_file_atomic(p.dir / "report.json", p.report.dump(2) + "\n");
    out << (p.dir / "checkpoint.json").string() << '\n';
  }
  return kExitOk;
}

int cmd_evaluate(const GlobalOptions& g, const std::string& checkpoint, const std::string& dataset,
                 const std::string& subset, bool steady, std::ostream& out) {
  const Checkpoint ckpt = Checkpoint::load(checkpoint);
  const SignalMatrix data = checkpoint_data(ckpt, dataset);
  const ChannelSet set{ckpt.channel_tag, ckpt.model.channels()};
  const WindowedDataset windows =
      apply_normalization(make_windows(data, set, ckpt.window), ckpt.normalization);
  const WindowedDataset chosen = windows.subset(subset_range(ckpt, windows, subset));
  if (chosen.empty()) throw InputError("subset '" + subset + "' holds no samples");
  const auto predictions = predict_all(ckpt.model, chosen);
  const MetricReport report = evaluate_predictions(chosen.targets(), predictions);

  json j = metric_report_to_json(report);
  if (!steady) j.erase("steady_state");
  j["channel_set"] = ckpt.channel_tag;
  j["subset"] = subset;
  j["config_hash"] = ckpt.config_hash;
  out << "MAE " << report.mae << " RMSE " << report.rmse << " samples " << report.samples << '\n';
  if (steady) {
    if (report.steady.converged()) {
      out << "steady-state MAE " << report.steady.mae << " RMSE " << report.steady.rmse
          << " from sample " << *report.steady.start << '\n';
    } else {
      out << "steady-state: no convergence\n";
    }
  }
  if (!g.out.empty()) {
    std::vector<double> times(chosen.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) times[i] = chosen.time(i);
    const std::string csv = errors_csv(times, chosen.targets(), predictions, ckpt.config_hash);
    make_dir(g.out);
    write_file_atomic(fs::path(g.out) / "evaluation.json", j.dump(2) + "\n");
    write_file_atomic(fs::path(g.out) / "errors.csv", csv);
  }
  return kExitOk;
}

int cmd_sensitivity(const GlobalOptions& g, const std::string& checkpoint,
                    const std::string& dataset, const std::string& subset, std::ostream& out) {
  const Checkpoint ckpt = Checkpoint::load(checkpoint);
  const SignalMatrix data = checkpoint_data(ckpt, dataset);
  const ChannelSet set{ckpt.channel_tag, ckpt.model.channels()};
  const WindowedDataset windows = make_windows(data, set, ckpt.window);
  const SampleRange range = subset_range(ckpt, windows, subset);
  if (range.size() == 0) throw InputError("subset '" + subset + "' holds no samples");
  const std::size_t row_begin = windows.end_row(range.begin) + 1 - ckpt.window;
  const std::size_t row_end = windows.end_row(range.end - 1) + 1;

  SensitivityProfile prof = profile(ckpt.model, data.slice(row_begin, row_end), ckpt.partitions,
                                    ckpt.normalization, ckpt.window);
  for (auto& k : prof.steps) k += row_begin;
  const SensitivitySummary summary = summarize(prof);
  json s = summary_to_json(summary);
  s["config_hash"] = ckpt.config_hash;
  s["channel_set"] = ckpt.channel_tag;
  s["subset"] = subset;

  const fs::path dir = output_dir(g, "out");
  make_dir(dir);
  write_profile_csv(dir / "profile.csv", prof, "config_hash=" + ckpt.config_hash);
  write_file_atomic(dir / "summary.json", s.dump(2) + "\n");
  out << "ranking:";
  for (ChannelId c : summary.ranking) out << ' ' << channel_symbol(c);
  out << '\n' << (dir / "profile.csv").string() << '\n' << (dir / "summary.json").string() << '\n';
  return kExitOk;
}

int cmd_decompose(const GlobalOptions& g, const std::string& dataset, double tau_s,
                  double sample_period_s, std::ostream& out) {
  CsvSchema schema = CsvSchema::canonical();
  schema.sample_period_s = sample_period_s;
  const SignalMatrix m = load_dataset(dataset, schema);
  const auto t = m.column(ChannelId::temp_surface);
  const auto parts = decompose_temperature(t, tau_s, m.sample_period());
  const std::string hash = config_hash(
      json{{"dataset", dataset}, {"tau_s", tau_s}, {"sample_period_s", sample_period_s}}.dump());
  std::string csv = "# config_hash=" + hash + "\ntime_s,temp_surface_c,temp_hf_c,temp_lf_c\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    csv += num(m.timestamps()[i]) + "," + num(t[i]) + "," + num(parts.high[i]) + "," +
           num(parts.low[i]) + "\n";
  }
  const fs::path dir = output_dir(g, "out");
  make_dir(dir);
  write_file_atomic(dir / "decomposed.csv", csv);
  out << (dir / "decomposed.csv").string() << '\n';
  return kExitOk;
}

int cmd_ablate(const GlobalOptions& g, std::ostream& out) {
  const RunConfig cfg = load_run_config(g);
  const SignalMatrix data = load_dataset(cfg.dataset, cfg.schema());
  AblationConfig ac;
  for (const auto& s : cfg.channel_sets) ac.channel_sets.push_back(ChannelSet::parse(s));
  ac.experiment = cfg.experiment;
  ac.baseline = cfg.baseline;
  ac.extra_seeds = cfg.extra_seeds;
  const AblationReport report = run_ablation(data, ac, [&out](const std::string& tag, auto seed) {
    out << "training " << tag << " (seed " << seed << ")\n";
  });
  json j = ablation_report_to_json(report);
  j["config_hash"] = cfg.hash();

  out << std::left << std::setw(12) << "set" << std::setw(14) << "MAE" << std::setw(14) << "RMSE"
      << "improvement\n";
  for (const auto& r : report.results) {
    out << std::left << std::setw(12) << r.tag << std::setw(14) << r.report.mae << std::setw(14)
        << r.report.rmse << r.improvement << '\n';
  }
  make_dir(cfg.output);
  write_file_atomic(cfg.output / "ablation.json", j.dump(2) + "\n");
  write_error_trajectories(cfg.output / "errors.csv", report);
  out << (cfg.output / "ablation.json").string() << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-sensor battery SOC estimation with LSTM and sensitivity analysis",
               "socsense"};
  app.require_subcommand(1);
  GlobalOptions g;
  std::uint64_t seed = 0;
  app.add_option("--config", g.config, "Run configuration (JSON)");
  auto* seed_opt = app.add_option("--seed", seed, "Random seed override");
  app.add_option("--out", g.out, "Output directory");
  app.fallthrough();

  std::string scenario;
  std::size_t cycles = 20;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic cell dataset");
  synth->add_option("scenario", scenario, "Scenario name")
      ->required()
      ->check(CLI::IsMember({"expansion-cell", "optical-cell", "force-cell"}));
  synth->add_option("--cycles", cycles, "Protocol cycles")->check(CLI::PositiveNumber);

  std::string channels;
  bool verbose = false;
  auto* train_cmd = app.add_subcommand("train", "Train one checkpoint per channel set");
  train_cmd->add_option("--channels", channels, "Channel set tag, overrides the config");
  train_cmd->add_flag("--verbose", verbose, "Print losses every 100 epochs");

  std::string checkpoint, dataset, subset = "all";
  bool steady = false;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a checkpoint on a dataset");
  evaluate->add_option("--checkpoint", checkpoint)->required();
  evaluate->add_option("--dataset", dataset, "Dataset manifest")->required();
  evaluate->add_option("--subset", subset)->check(CLI::IsMember({"all", "train", "test"}));
  evaluate->add_flag("--steady-state", steady, "Report steady-state filtered metrics");

  auto* sens = app.add_subcommand("sensitivity", "Time-varying sensitivity profile");
  sens->add_option("--checkpoint", checkpoint)->required();
  sens->add_option("--dataset", dataset, "Dataset manifest")->required();
  sens->add_option("--subset", subset)->check(CLI::IsMember({"all", "train", "test"}));

  double tau_s = 3600.0, period = 1.0;
  auto* decompose = app.add_subcommand("decompose", "Split T into T_HF and T_LF");
  decompose->add_option("--dataset", dataset, "Dataset manifest")->required();
  decompose->add_option("--tau", tau_s, "Low-pass time constant in seconds")
      ->check(CLI::PositiveNumber);
  decompose->add_option("--sample-period", period, "Resampling period in seconds")
      ->check(CLI::PositiveNumber);

  auto* ablate = app.add_subcommand("ablate", "Channel-set ablation from a run config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitUser;
  }
  if (*seed_opt) g.seed = seed;

  try {
    if (*synth) return cmd_synth(g, scenario, cycles, out);
    if (*train_cmd) return cmd_train(g, channels, verbose, out);
    if (*evaluate) return cmd_evaluate(g, checkpoint, dataset, subset, steady, out);
    if (*sens) return cmd_sensitivity(g, checkpoint, dataset, subset, out);
    if (*decompose) return cmd_decompose(g, dataset, tau_s, period, out);
    if (*ablate) return cmd_ablate(g, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUser;
}

}  // namespace socsense::cli
