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

// Acceptance suite: one PASS/FAIL line per criterion; exits nonzero when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "socsense/cli/cli.hpp"
#include "socsense/evaluation/ablation.hpp"
#include "socsense/evaluation/metrics.hpp"
#include "socsense/lstm/backward.hpp"
#include "socsense/lstm/cell.hpp"
#include "socsense/pipeline/checkpoint.hpp"
#include "socsense/sensitivity/partition.hpp"
#include "socsense/sensitivity/sensitivity.hpp"
#include "socsense/signals/decompose.hpp"
#include "socsense/signals/manifest.hpp"
#include "socsense/synthcell/suite.hpp"

namespace fs = std::filesystem;
using namespace socsense;

namespace {

// Tolerances and budgets.
constexpr double kGradRelTol = 1e-4;
constexpr double kGradAbsFloor = 1e-7;
constexpr double kCellStepTol = 1e-12;
constexpr double kPhiTol = 1e-10;
constexpr double kPartitionSumTol = 1e-12;
constexpr double kReconstructionTol = 1e-12;
constexpr double kRoutingFraction = 0.9;
constexpr double kMinImprovement = 0.20;
constexpr double kMinSpearman = 0.5;
constexpr double kTrendBudgetS = 15.0 * 60.0;

// End-to-end trend setup.
constexpr std::size_t kTrendCycles = 20;
constexpr std::size_t kTrendHidden = 16;
constexpr std::size_t kTrendWindow = 50;
constexpr std::size_t kTrendMaxEpochs = 300;
constexpr std::size_t kTrendPatience = 60;
constexpr double kTrendLearningRate = 3e-3;
constexpr double kExpansionPeriodS = 60.0;
constexpr double kForcePeriodS = 240.0;
constexpr std::uint64_t kTrendSeed = 42;
constexpr double kPerturbationSigma = 0.2;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double lo = -1,
                                  double hi = 1) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const std::vector<ChannelId> kPool{ChannelId::voltage, ChannelId::current, ChannelId::expansion};

Outcome gradient_correctness() {
  std::size_t checked = 0, failures = 0;
  double worst = 0.0, worst_abs = 0.0;
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const std::size_t l = 1 + seed % 3;
    const std::size_t hidden = 1 + seed % 4;
    const std::size_t steps = 1 + (seed / 3) % 5;
    const std::size_t layers = 1 + seed % 2;
    std::vector<ChannelId> ch(kPool.begin(), kPool.begin() + static_cast<std::ptrdiff_t>(l));
    const LstmModel m = oracle::random_model(ch, hidden, layers, seed);
    std::mt19937_64 rng(1000 + seed);
    std::vector<std::vector<double>> windows;
    SampleBatch batch;
    batch.steps = steps;
    for (int b = 0; b < 3; ++b) windows.push_back(random_vector(steps * l, rng));
    for (const auto& w : windows) batch.windows.push_back(w);
    batch.targets = random_vector(3, rng, 0, 1);
    const auto analytic = backward(m, batch);
    const auto fd = oracle::finite_difference_check(m, batch, analytic.gradient, 1e-6,
                                                    kGradRelTol, kGradAbsFloor);
    checked += fd.parameters;
    failures += fd.failures;
    worst = std::max(worst, fd.worst_relative);
    worst_abs = std::max(worst_abs, fd.worst_absolute);
  }
  return {failures == 0, std::to_string(checked) + " parameters over 24 models, worst rel " +
                             fmt("%.2e", worst) + ", worst abs " + fmt("%.2e", worst_abs)};
}

Outcome cell_step_oracle() {
  const std::vector<ChannelId> vi{ChannelId::voltage, ChannelId::current};
  double worst = 0.0;
  auto track = [&](double got, double want) { worst = std::max(worst, std::abs(got - want)); };

  LstmModel zero(vi, 3, 1);
  const auto a = cell_step(zero.layer(0), Vector{0.3, -0.7}, LayerState::zeros(3));
  for (int u = 0; u < 3; ++u) {
    track(a.input_gate[u], 0.5);
    track(a.forget_gate[u], 0.5);
    track(a.output_gate[u], 0.5);
    track(a.candidate[u], 0.0);
    track(a.state.cell[u], 0.0);
    track(a.state.hidden[u], 0.0);
  }

  LayerState prev = LayerState::zeros(3);
  prev.cell = {1.0, -2.0, 0.4};
  const auto b = cell_step(zero.layer(0), Vector{5.0, -5.0}, prev);
  for (int u = 0; u < 3; ++u) {
    track(b.state.cell[u], 0.5 * prev.cell[u]);
    track(b.state.hidden[u], 0.5 * std::tanh(0.5 * prev.cell[u]));
  }

  LstmModel ones({ChannelId::voltage}, 1, 1);
  auto p = ones.layer(0);
  for (std::size_t i = 0; i < 4; ++i) p.w_input[i] = p.w_recurrent[i] = 1.0;
  LayerState one = LayerState::zeros(1);
  one.cell = {1.0};
  const auto c = cell_step(ones.layer(0), Vector{0.0}, one);
  track(c.input_gate[0], 0.5);
  track(c.forget_gate[0], 0.5);
  track(c.output_gate[0], 0.5);
  track(c.candidate[0], 0.0);
  track(c.state.cell[0], 0.5);
  track(c.state.hidden[0], 0.5 * std::tanh(0.5));
  const bool rounded = std::abs(c.state.hidden[0] - 0.2311) < 5e-5;
  return {worst <= kCellStepTol && rounded, "max abs deviation " + fmt("%.1e", worst)};
}

Outcome sensitivity_oracle() {
  std::size_t instances = 0, mismatches = 0, negative = 0, nonzero_ignored = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t l = 2 + seed % 2;
    const std::size_t hidden = seed == 0 ? 2 : 1 + seed % 4;
    const std::size_t steps = seed == 0 ? 3 : 1 + seed % 5;
    const std::size_t h_count = seed == 0 ? 2 : 1 + seed % 10;
    std::vector<ChannelId> ch(kPool.begin(), kPool.begin() + static_cast<std::ptrdiff_t>(l));
    LstmModel m = oracle::random_model(ch, hidden, 1 + seed % 2, 50 + seed);
    std::mt19937_64 rng(seed);
    Normalization norm;
    std::vector<IntervalPartition> parts;
    for (std::size_t c = 0; c < l; ++c) {
      const auto raw = random_vector(100, rng, -3.0 * static_cast<double>(c + 1), 5.0);
      const auto [mn, mx] = std::minmax_element(raw.begin(), raw.end());
      norm.channels.push_back({ch[c], *mn, *mx, false});
      parts.push_back(build_partition(ch[c], raw, h_count));
    }
    const auto window = random_vector(steps * l, rng);
    SensitivityAnalyzer analyzer(m, norm, parts);
    for (std::size_t c = 0; c < l; ++c) {
      const double got = analyzer.at(window, steps, ch[c]);
      const double want = oracle::brute_force_phi(m, window, steps, c, parts[c], norm.channels[c]);
      worst = std::max(worst, std::abs(got - want));
      if (std::abs(got - want) > kPhiTol) ++mismatches;
      if (got < 0.0) ++negative;
    }
    ++instances;

    m.zero_input_channel(ch[0]);
    SensitivityAnalyzer ignoring(m, norm, parts);
    for (int trial = 0; trial < 5; ++trial) {
      const auto w = random_vector(steps * l, rng);
      if (ignoring.at(w, steps, ch[0]) != 0.0) ++nonzero_ignored;
    }
  }
  return {instances >= 10 && mismatches == 0 && negative == 0 && nonzero_ignored == 0,
          std::to_string(instances) + " instances, max |diff| " + fmt("%.1e", worst) +
              ", zeroed-channel nonzero " + std::to_string(nonzero_ignored)};
}

Outcome partition_invariants(const SignalMatrix& data) {
  double worst = 0.0;
  for (ChannelId id : data.channels()) {
    const auto values = data.column(id);
    for (std::size_t h : {1u, 4u, 10u}) {
      const auto p = build_partition(id, values, h);
      const double sum = std::accumulate(p.probabilities.begin(), p.probabilities.end(), 0.0);
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  std::vector<double> grid(100);
  std::iota(grid.begin(), grid.end(), 0.0);
  const auto g = build_partition(ChannelId::current, grid, 10);
  bool exact = g.intervals() == 10;
  for (std::size_t h = 0; exact && h < 10; ++h) {
    exact = std::abs(g.probabilities[h] - 0.1) < 1e-15 &&
            std::abs(g.means[h] - (4.5 + 10.0 * static_cast<double>(h))) < 1e-12;
  }
  const bool default_ten = kDefaultIntervals == 10 &&
                           build_partition(ChannelId::current, grid).intervals() == 10;
  return {worst <= kPartitionSumTol && exact && default_ten,
          "max |sum P - 1| " + fmt("%.1e", worst) + (exact ? ", grid exact" : ", grid mismatch")};
}

double half_range(std::span<const double> x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return 0.5 * (*hi - *lo);
}

Outcome decomposition(const SignalMatrix& data) {
  std::vector<std::vector<double>> signals;
  signals.push_back(data.column(ChannelId::temp_surface));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(25, 4);
  std::vector<double> noise(20000);
  for (auto& x : noise) x = n(rng);
  signals.push_back(noise);
  std::vector<double> step(5000, -10.0);
  std::fill(step.begin() + 2500, step.end(), 45.0);
  signals.push_back(step);

  double worst = 0.0;
  for (const auto& t : signals) {
    double scale = 0.0;
    for (double v : t) scale = std::max(scale, std::abs(v));
    for (double tau : {60.0, 3600.0}) {
      const auto d = decompose_temperature(t, tau, 1.0);
      for (std::size_t k = 0; k < t.size(); ++k) {
        worst = std::max(worst, std::abs(t[k] - (d.low[k] + d.high[k])) / scale);
      }
    }
  }

  const double tau = 3600.0, amp = 2.0;
  auto sine = [&](double period, std::size_t len) {
    std::vector<double> t(len);
    for (std::size_t k = 0; k < len; ++k) {
      t[k] = 25.0 + amp * std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / period);
    }
    return t;
  };
  const auto fast = decompose_temperature(sine(60.0, 40000), tau, 1.0);
  const double hf = half_range(std::span<const double>(fast.high).subspan(20000));
  const auto slow = decompose_temperature(sine(400000.0, 800000), tau, 1.0);
  const double lf = half_range(slow.low);
  const bool routed = hf >= kRoutingFraction * amp && lf >= kRoutingFraction * amp;
  return {worst <= kReconstructionTol && routed,
          "max rel residual " + fmt("%.1e", worst) + ", routed " + fmt("%.3f/%.3f", hf / amp, lf / amp)};
}

struct TrendLeg {
  double vi_mae = 0.0;
  double rich_mae = 0.0;
  double seconds = 0.0;
  FittedChannelSet rich_fit;
  SignalMatrix prepared;
};

TrendLeg run_trend(const std::string& scenario, const std::string& rich, double period,
                   const fs::path& dir) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto suite = generate_suite(scenario, dir / scenario, kTrendCycles, kTrendSeed);
  CsvSchema schema = CsvSchema::canonical();
  schema.sample_period_s = period;
  schema.max_gap_s = std::max(60.0, 2.0 * period);
  const SignalMatrix data = load_dataset(suite.manifest, schema);

  ExperimentConfig cfg;
  cfg.window = kTrendWindow;
  cfg.hidden = kTrendHidden;
  cfg.train.max_epochs = kTrendMaxEpochs;
  cfg.train.patience = kTrendPatience;
  cfg.train.adam.learning_rate = kTrendLearningRate;
  cfg.train.seed = kTrendSeed;

  TrendLeg leg;
  const ChannelSet vi = ChannelSet::parse("VI");
  const ChannelSet rs = ChannelSet::parse(rich);
  leg.vi_mae = fit_channel_set(prepare_channels(data, vi, cfg.tau_s), vi, cfg, kTrendSeed)
                   .test_report.mae;
  leg.prepared = prepare_channels(data, rs, cfg.tau_s);
  leg.rich_fit = fit_channel_set(leg.prepared, rs, cfg, kTrendSeed);
  leg.rich_mae = leg.rich_fit.test_report.mae;
  leg.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return leg;
}

double improvement(const TrendLeg& leg) { return (leg.vi_mae - leg.rich_mae) / leg.vi_mae; }

std::string describe(const char* rich, const TrendLeg& leg) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "VI %.3f%% vs %s %.3f%% (%+.1f%%)", 100 * leg.vi_mae, rich,
                100 * leg.rich_mae, 100 * improvement(leg));
  return buf;
}

Outcome steady_state_semantics() {
  const std::vector<double> all_small{0.01, -0.02, 0.049};
  const auto a = steady_state_filter(all_small);
  const bool ex1 = a.converged() && *a.start == 0 && a.count == 3;
  const std::vector<double> late{0.2, 0.04, 0.03};
  const auto b = steady_state_filter(late);
  const bool ex2 = b.converged() && b.mask == std::vector<std::uint8_t>{0, 1, 1};
  std::vector<double> osc;
  for (int i = 0; i < 200; ++i) osc.push_back(i % 2 ? -0.08 : 0.01);
  const auto c = steady_state_filter(osc);
  const bool ex3 = !c.converged() && c.count == 0;

  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0, 1);
  std::size_t converged = 0, violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> y(100, 0.5), yh(100);
    for (std::size_t i = 0; i < y.size(); ++i) {
      yh[i] = y[i] + 0.2 * std::exp(-static_cast<double>(i) / 8.0) * n(rng) + 0.01 * n(rng);
    }
    const auto r = evaluate_predictions(y, yh);
    if (r.steady.converged()) {
      ++converged;
      if (r.steady.mae > r.mae) ++violations;
    }
  }
  return {ex1 && ex2 && ex3 && violations == 0,
          std::string("examples ") + (ex1 ? "1" : "-") + (ex2 ? "2" : "-") + (ex3 ? "3" : "-") +
              ", " + std::to_string(converged) + " converged series, " +
              std::to_string(violations) + " violations"};
}

Outcome metric_inequalities() {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n(0, 1);
  std::size_t violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t len = 1 + rng() % 64;
    std::vector<double> a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
      a[i] = n(rng);
      b[i] = n(rng);
    }
    if (rmse(a, b) < mae(a, b) * (1.0 - 1e-12)) ++violations;
    if (mae(a, a) != 0.0 || rmse(a, a) != 0.0) ++violations;
    std::vector<double> c = a;
    c[rng() % len] += 1e-3;
    if (!(mae(a, c) > 0.0) || !(rmse(a, c) > 0.0)) ++violations;
  }
  return {violations == 0, "1000 random pairs, " + std::to_string(violations) + " violations"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "socsense");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) std::fprintf(stderr, "%s", err.str().c_str());
  return code;
}

Outcome determinism(const fs::path& dir) {
  const auto data = dir / "data";
  if (cli({"synth", "force-cell", "--cycles", "1", "--out", data.string()}) != 0) {
    return {false, "synth failed"};
  }
  std::ofstream(dir / "config.json")
      << R"({"dataset": ")" << (data / "manifest.json").generic_string() << R"(",
  "channels": ["VI", "VIηF"], "window": 8, "hidden": 4, "max_epochs": 15,
  "sample_period_s": 60, "seed": 3})";

  std::vector<std::string> outputs;
  for (const char* run : {"a", "b"}) {
    const auto out = dir / run;
    const auto cfg = (dir / "config.json").string();
    const auto ckpt = (out / "train" / "VIηF" / "checkpoint.json").string();
    if (cli({"train", "--config", cfg, "--out", (out / "train").string()}) != 0 ||
        cli({"sensitivity", "--checkpoint", ckpt, "--dataset", (data / "manifest.json").string(),
             "--out", (out / "sens").string()}) != 0 ||
        cli({"ablate", "--config", cfg, "--out", (out / "ablate").string()}) != 0) {
      return {false, std::string("run ") + run + " failed"};
    }
    std::string all;
    for (const auto& f : {out / "train" / "VI" / "checkpoint.json",
                          out / "train" / "VIηF" / "checkpoint.json",
                          out / "train" / "VIηF" / "report.json", out / "sens" / "profile.csv",
                          out / "sens" / "summary.json", out / "ablate" / "ablation.json",
                          out / "ablate" / "errors.csv"}) {
      if (!fs::exists(f)) return {false, "missing " + f.string()};
      all += slurp(f);
      all += '\x1f';
    }
    outputs.push_back(all);
  }
  return {outputs[0] == outputs[1], "7 artifacts compared byte for byte"};
}

Outcome perturbation_rank(const TrendLeg& leg) {
  const auto& fit = leg.rich_fit;
  const auto& set = fit.channel_set;
  const auto parts = training_partitions(leg.prepared, set.members, fit.train_row_begin,
                                         fit.train_row_end);
  const auto windows =
      apply_normalization(make_windows(leg.prepared, set, kTrendWindow), fit.normalization);
  const auto test = windows.subset(fit.test_range);
  const std::size_t row_begin = windows.end_row(fit.test_range.begin) + 1 - kTrendWindow;
  const std::size_t row_end = windows.end_row(fit.test_range.end - 1) + 1;
  const auto prof = profile(fit.model, leg.prepared.slice(row_begin, row_end), parts,
                            fit.normalization, kTrendWindow);
  const auto summary = summarize(prof);

  std::vector<double> phi, degradation;
  std::string detail;
  for (const auto& s : summary.channels) {
    phi.push_back(s.mean);
    degradation.push_back(perturbation_degradation(fit.model, test, s.channel,
                                                   kPerturbationSigma, kTrendSeed));
    detail += std::string(channel_symbol(s.channel)) + " " + fmt("%.2e/%.2e ", s.mean,
                                                                 degradation.back());
  }
  const double rho = spearman(phi, degradation);
  return {rho > kMinSpearman, "rho " + fmt("%.3f", rho) + " [" + detail + "]"};
}

void report(int id, const char* name, const Outcome& o, double seconds, int& failures) {
  std::printf("%s  %2d  %-34s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), seconds);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

template <class F>
auto timed(F&& f, double& seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = f();
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

int main() {
  const fs::path dir =
      fs::temp_directory_path() / ("socsense_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  int failures = 0;
  double s = 0.0;

  auto small = expansion_cell_scenario(7);
  const SignalMatrix sample = prepare_channels(simulate(small.cell, small.protocol, 2),
                                               ChannelSet::parse("VIET"), 3600.0);

  Outcome o = timed(gradient_correctness, s);
  o.pass = o.pass && s < 60.0;
  report(1, "gradient correctness", o, s, failures);
  o = timed(cell_step_oracle, s);
  o.pass = o.pass && s < 1.0;
  report(2, "LSTM step oracle", o, s, failures);
  o = timed(sensitivity_oracle, s);
  o.pass = o.pass && s < 60.0;
  report(3, "sensitivity oracle equivalence", o, s, failures);
  o = timed([&] { return partition_invariants(sample); }, s);
  report(4, "partition invariants", o, s, failures);
  o = timed([&] { return decomposition(sample); }, s);
  report(5, "decomposition exactness", o, s, failures);

  const TrendLeg expansion = run_trend("expansion-cell", "VIET", kExpansionPeriodS, dir);
  const TrendLeg force = run_trend("force-cell", "VIηF", kForcePeriodS, dir);
  const double trend_s = expansion.seconds + force.seconds;
  o.pass = improvement(expansion) >= kMinImprovement && improvement(force) >= kMinImprovement &&
           trend_s < kTrendBudgetS;
  o.detail = describe("VIET", expansion) + "; " + describe("VIηF", force);
  report(6, "end-to-end channel trend", o, trend_s, failures);

  o = timed(steady_state_semantics, s);
  report(7, "steady-state filter semantics", o, s, failures);
  o = timed(metric_inequalities, s);
  report(8, "metric inequalities", o, s, failures);
  o = timed([&] { return determinism(dir / "determinism"); }, s);
  report(9, "determinism", o, s, failures);
  o = timed([&] { return perturbation_rank(expansion); }, s);
  report(10, "perturbation-rank consistency", o, s, failures);

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  fs::remove_all(dir);
  return failures == 0 ? 0 : 1;
}
