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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "socsense/error.hpp"
#include "socsense/evaluation/ablation.hpp"
#include "socsense/evaluation/metrics.hpp"
#include "socsense/synthcell/suite.hpp"

namespace socsense {
namespace {

TEST(Metrics, Examples) {
  const std::vector<double> y{0, 0.5}, yh{0.1, 0.3};
  EXPECT_NEAR(mae(y, yh), 0.15, 1e-15);
  EXPECT_EQ(mae(y, y), 0.0);
  EXPECT_EQ(rmse(y, y), 0.0);
  const std::vector<double> z{0, 0}, e{0.1, 0.2};
  EXPECT_NEAR(rmse(z, e), std::sqrt(0.025), 1e-15);
  EXPECT_NEAR(rmse(z, e), 0.1581, 1e-4);
  const std::vector<double> one{0.3}, other{0.55};
  EXPECT_DOUBLE_EQ(mae(one, other), 0.25);
  EXPECT_DOUBLE_EQ(rmse(one, other), 0.25);
}

TEST(Metrics, Errors) {
  const std::vector<double> empty, two{1, 2}, three{1, 2, 3};
  EXPECT_THROW(mae(empty, empty), InputError);
  EXPECT_THROW(rmse(empty, empty), InputError);
  EXPECT_THROW(mae(two, three), InputError);
  EXPECT_THROW(rmse(two, three), InputError);
}

TEST(Metrics, RmseDominatesAndSymmetry) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t len = 1 + rng() % 50;
    std::vector<double> a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
      a[i] = n(rng);
      b[i] = n(rng);
    }
    EXPECT_GE(rmse(a, b), mae(a, b) * (1 - 1e-12));
    EXPECT_EQ(mae(a, b), mae(b, a));
    EXPECT_EQ(rmse(a, b), rmse(b, a));
    EXPECT_GT(mae(a, b), 0.0);
  }
}

TEST(SteadyState, AllBelowThreshold) {
  const std::vector<double> e{0.01, -0.02, 0.049};
  const auto r = steady_state_filter(e);
  ASSERT_TRUE(r.converged());
  EXPECT_EQ(*r.start, 0u);
  EXPECT_EQ(r.mask, (std::vector<std::uint8_t>{1, 1, 1}));
  EXPECT_EQ(r.count, 3u);
}

TEST(SteadyState, SuffixAfterLastCrossing) {
  const std::vector<double> e{0.2, 0.04, 0.03};
  const auto r = steady_state_filter(e);
  ASSERT_TRUE(r.converged());
  // The masked suffix is the second and third samples.
  EXPECT_EQ(*r.start, 1u);
  EXPECT_EQ(r.mask, (std::vector<std::uint8_t>{0, 1, 1}));
  EXPECT_NEAR(r.mae, 0.035, 1e-15);
  EXPECT_NEAR(r.rmse, std::sqrt((0.04 * 0.04 + 0.03 * 0.03) / 2), 1e-15);
}

TEST(SteadyState, OscillationNeverConverges) {
  std::vector<double> e;
  for (int i = 0; i < 100; ++i) e.push_back(i % 2 ? -0.06 : 0.01);
  const auto r = steady_state_filter(e);
  EXPECT_FALSE(r.converged());
  EXPECT_EQ(r.count, 0u);
  for (auto m : r.mask) EXPECT_EQ(m, 0);
  // Negative errors count by magnitude, and the threshold itself is not "within".
  EXPECT_FALSE(steady_state_filter(std::vector<double>{0.0, 0.05}).converged());
}

TEST(SteadyState, FilteredMaeNotAboveUnfiltered) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> y(80), yh(80);
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = 0.5;
      const double decay = std::exp(-static_cast<double>(i) / 10.0);
      yh[i] = 0.5 + 0.3 * decay * n(rng) + 0.005 * n(rng);
    }
    const auto rep = evaluate_predictions(y, yh);
    if (rep.steady.converged()) EXPECT_LE(rep.steady.mae, rep.mae + 1e-15);
  }
}

TEST(Metrics, ReportCarriesSignedErrors) {
  const std::vector<double> y{0.5, 0.6}, yh{0.52, 0.55};
  const auto r = evaluate_predictions(y, yh);
  EXPECT_NEAR(r.errors[0], 0.02, 1e-15);
  EXPECT_NEAR(r.errors[1], -0.05, 1e-15);
  EXPECT_EQ(r.samples, 2u);
}

TEST(Spearman, RanksAndTies) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> up{10, 20, 30, 40, 1000}, down{5, 4, 3, 2, 1};
  EXPECT_NEAR(spearman(a, up), 1.0, 1e-15);
  EXPECT_NEAR(spearman(a, down), -1.0, 1e-15);
  const std::vector<double> flat{2, 2, 2, 2, 2};
  EXPECT_EQ(spearman(a, flat), 0.0);
  const std::vector<double> tied{1, 2, 2, 3};
  const std::vector<double> ref{1, 2, 3, 4};
  // Ranks (1, 2.5, 2.5, 4) against (1, 2, 3, 4).
  EXPECT_NEAR(spearman(tied, ref), 4.5 / std::sqrt(4.5 * 5.0), 1e-12);
}

SignalMatrix small_dataset() {
  auto s = expansion_cell_scenario(3);
  s.protocol.phases = {CcCharge{2.0, 4.1}, CcDischarge{2.0, 3.5, 0.4, 0.0}};
  s.cell.initial_soc = 0.5;
  auto m = simulate(s.cell, s.protocol, 1);
  // Every 20th row keeps the test fast.
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < m.steps(); r += 20) keep.push_back(r);
  std::vector<double> t;
  Matrix v(keep.size(), m.channel_count());
  std::vector<double> soc;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    t.push_back(m.timestamps()[keep[i]]);
    soc.push_back((*m.soc())[keep[i]]);
    for (std::size_t c = 0; c < m.channel_count(); ++c) v(i, c) = m.values()(keep[i], c);
  }
  SignalMatrix out(t, m.channels(), v);
  out.set_soc(soc);
  return out;
}

AblationConfig tiny_config() {
  AblationConfig c;
  c.channel_sets = {ChannelSet::parse("VI"), ChannelSet::parse("VIE")};
  c.experiment.window = 5;
  c.experiment.hidden = 3;
  c.experiment.layers = 1;
  c.experiment.train.max_epochs = 5;
  c.experiment.train.seed = 9;
  return c;
}

TEST(Ablation, DeterministicAndSorted) {
  const auto m = small_dataset();
  const auto cfg = tiny_config();
  const auto a = run_ablation(m, cfg);
  const auto b = run_ablation(m, cfg);
  ASSERT_EQ(a.results.size(), 2u);
  EXPECT_EQ(a.baseline, "VI");
  EXPECT_EQ(ablation_report_to_json(a).dump(), ablation_report_to_json(b).dump());
  EXPECT_LE(a.results[0].report.mae, a.results[1].report.mae);
  for (const auto& r : a.results) {
    if (r.tag == "VI") EXPECT_EQ(r.improvement, 0.0);
    EXPECT_GE(r.report.rmse, r.report.mae * (1 - 1e-12));
  }
  const auto& vi = a.results[0].tag == "VI" ? a.results[0] : a.results[1];
  const auto& vie = a.results[0].tag == "VI" ? a.results[1] : a.results[0];
  EXPECT_NEAR(vie.improvement, (vi.report.mae - vie.report.mae) / vi.report.mae, 1e-15);
}

TEST(Ablation, SingleSetAndValidation) {
  const auto m = small_dataset();
  auto cfg = tiny_config();
  cfg.channel_sets = {ChannelSet::parse("VIE")};
  const auto r = run_ablation(m, cfg);
  EXPECT_EQ(r.baseline, "VIE");
  EXPECT_EQ(r.results[0].improvement, 0.0);

  cfg.channel_sets = {ChannelSet::parse("VI"), ChannelSet::parse("VI")};
  EXPECT_THROW(run_ablation(m, cfg), InputError);
  cfg.channel_sets = {ChannelSet::parse("VIF")};
  EXPECT_THROW(run_ablation(m, cfg), InputError);
}

TEST(Ablation, TemperatureSetGetsDecomposition) {
  const auto m = small_dataset();
  const auto prepared = prepare_channels(m, ChannelSet::parse("VIET"), 600);
  EXPECT_TRUE(prepared.has_channel(ChannelId::temp_hf));
  EXPECT_TRUE(prepared.has_channel(ChannelId::temp_lf));
  EXPECT_FALSE(prepare_channels(m, ChannelSet::parse("VI"), 600).has_channel(ChannelId::temp_hf));
}

}  // namespace
}  // namespace socsense
