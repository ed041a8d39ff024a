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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>

#include "socsense/error.hpp"
#include "socsense/signals/csv.hpp"
#include "socsense/signals/dataset.hpp"
#include "socsense/signals/decompose.hpp"
#include "socsense/signals/manifest.hpp"

namespace socsense {
namespace {

const CsvSchema kSchema = CsvSchema::canonical();

TEST(Csv, ThreeRowSmoke) {
  const auto m = parse_csv(
      "time_s,voltage_v,current_a,soc\n0,3.7,1.0,0.5\n1,3.71,1.1,0.51\n2,3.72,1.2,0.52\n", kSchema);
  EXPECT_EQ(m.steps(), 3u);
  // Channels keep file column order.
  EXPECT_EQ(m.channels(), (std::vector<ChannelId>{ChannelId::voltage, ChannelId::current}));
  EXPECT_EQ(m.values()(2, 1), 1.2);
  EXPECT_EQ(m.values()(2, 0), 3.72);
  EXPECT_EQ((*m.soc())[1], 0.51);
}

TEST(Csv, ColumnOrderDoesNotMatter) {
  const auto a = parse_csv("time_s,voltage_v,current_a,soc\n0,3.7,1,0.5\n1,3.8,2,0.6\n", kSchema);
  const auto b = parse_csv("soc,current_a,time_s,voltage_v\n0.5,1,0,3.7\n0.6,2,1,3.8\n", kSchema);
  EXPECT_EQ(a.column(ChannelId::voltage), b.column(ChannelId::voltage));
  EXPECT_EQ(a.column(ChannelId::current), b.column(ChannelId::current));
  EXPECT_EQ(*a.soc(), *b.soc());
  EXPECT_EQ(a.timestamps(), b.timestamps());
}

TEST(Csv, DoubleRateIsResampledToOneHertz) {
  std::string text = "time_s,voltage_v,soc\n";
  const int n = 41;
  for (int i = 0; i < n; ++i) {
    const double t = 0.5 * i;
    text += std::to_string(t) + "," + std::to_string(3.0 + 0.01 * t) + ",0.5\n";
  }
  CsvLoadReport report;
  const auto m = parse_csv(text, kSchema, &report);
  EXPECT_NEAR(static_cast<double>(m.steps()), n / 2.0, 1.0);
  EXPECT_EQ(report.source_rows, static_cast<std::size_t>(n));
  EXPECT_EQ(report.output_rows, m.steps());
  for (std::size_t k = 0; k < m.steps(); ++k) {
    EXPECT_NEAR(m.timestamps()[k], static_cast<double>(k), 1e-12);
    EXPECT_NEAR(m.values()(k, 0), 3.0 + 0.01 * static_cast<double>(k), 1e-12);
  }
}

TEST(Csv, LinearInterpolationOntoGrid) {
  CsvSchema s = kSchema;
  s.max_gap_s = 10;
  const auto m = parse_csv("time_s,voltage_v\n0,3.0\n4,3.4\n", s);
  ASSERT_EQ(m.steps(), 5u);
  EXPECT_NEAR(m.values()(1, 0), 3.1, 1e-12);
  EXPECT_NEAR(m.values()(3, 0), 3.3, 1e-12);
}

TEST(Csv, Rejections) {
  EXPECT_THROW(parse_csv("time_s,bogus\n0,1\n", kSchema), InputError);
  EXPECT_THROW(parse_csv("time_s,voltage_v\n0,3.7\n2,3.7\n1,3.7\n", kSchema), InputError);
  EXPECT_THROW(parse_csv("time_s,voltage_v\n0,3.7\n0,3.7\n", kSchema), InputError);
  EXPECT_THROW(parse_csv("time_s,voltage_v\n0,3.7\n100,3.7\n", kSchema), InputError);
  EXPECT_THROW(parse_csv("time_s,voltage_v\n0,3.7\n1,abc\n", kSchema), InputError);
  EXPECT_THROW(parse_csv("time_s,voltage_v,soc\n0,3.7,55\n", kSchema), InputError);
  EXPECT_THROW(parse_csv("time_s,voltage_v\n0,370\n", kSchema), InputError);
  EXPECT_THROW(parse_csv("voltage_v\n3.7\n", kSchema), InputError);
  EXPECT_THROW(parse_csv("", kSchema), InputError);
  EXPECT_THROW(parse_csv("time_s,voltage_v\n0,3.7,1\n", kSchema), InputError);
}

TEST(Csv, GapMessageNamesThreshold) {
  try {
    parse_csv("time_s,voltage_v\n0,3.7\n100,3.7\n", kSchema);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("max_gap_s"), std::string::npos) << e.what();
  }
}

TEST(Csv, MissingValuesRejectedOrInterpolated) {
  const std::string text = "time_s,voltage_v\n0,3.0\n1,\n2,3.2\n";
  EXPECT_THROW(parse_csv(text, kSchema), InputError);
  CsvSchema s = kSchema;
  s.missing = MissingValuePolicy::interpolate;
  CsvLoadReport r;
  const auto m = parse_csv(text, s, &r);
  EXPECT_NEAR(m.values()(1, 0), 3.1, 1e-12);
  EXPECT_EQ(r.interpolated_values, 1u);
}

TEST(Csv, CommentsCycleAndPhase) {
  const auto m = parse_csv(
      "# provenance line\ntime_s,voltage_v,soc,cycle,phase\n0,3.7,0.5,1,cc_charge\n"
      "1,3.8,0.6,1,cv_charge\n2,3.9,0.7,2,rest\n",
      kSchema);
  ASSERT_TRUE(m.cycle());
  ASSERT_TRUE(m.phase());
  EXPECT_EQ(*m.cycle(), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ((*m.phase())[1], "cv_charge");
}

TEST(Csv, WriteThenLoadRoundTripsExactly) {
  std::vector<double> t{0, 1, 2, 3};
  Matrix v(4, 2, {3.7000000000000002, 1.0 / 3.0, 3.71, -2.5e-7, 3.72, 1e-3, 3.73, 0.1});
  SignalMatrix m(t, {ChannelId::voltage, ChannelId::current}, v);
  m.set_soc({0.1, 0.2, 0.30000000000000004, 0.4});
  m.set_cycle({1, 1, 2, 2});
  m.set_phase({"a", "a", "b", "b"});
  const auto path = std::filesystem::temp_directory_path() / "socsense_roundtrip.csv";
  write_csv(path, m, "config_hash=abc");
  const auto back = load_csv(path, kSchema);
  EXPECT_EQ(back.values(), m.values());
  EXPECT_EQ(*back.soc(), *m.soc());
  EXPECT_EQ(*back.cycle(), *m.cycle());
  EXPECT_EQ(*back.phase(), *m.phase());
  std::filesystem::remove(path);
}

TEST(Decompose, ConstantPassesThrough) {
  const std::vector<double> t(50, 25.0);
  const auto d = decompose_temperature(t, 3600, 1);
  for (std::size_t k = 0; k < t.size(); ++k) {
    EXPECT_EQ(d.low[k], 25.0);
    EXPECT_EQ(d.high[k], 0.0);
  }
}

TEST(Decompose, UnitStepFromZeroState) {
  const std::vector<double> t(12, 1.0);
  // alpha = dt / (tau + dt) = 0.5 with tau = dt.
  const auto d = decompose_temperature(t, 1.0, 1.0, 0.0);
  for (std::size_t k = 0; k < t.size(); ++k) {
    EXPECT_NEAR(d.low[k], 1.0 - std::pow(0.5, static_cast<double>(k + 1)), 1e-15);
    EXPECT_NEAR(d.high[k], std::pow(0.5, static_cast<double>(k + 1)), 1e-15);
  }
}

double amplitude(const std::vector<double>& x, std::size_t from) {
  const auto [lo, hi] = std::minmax_element(x.begin() + from, x.end());
  return 0.5 * (*hi - *lo);
}

TEST(Decompose, FrequencySeparation) {
  const double tau = 3600.0;
  auto sine = [](double period, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) {
      t[k] = 25.0 + 2.0 * std::sin(2 * std::numbers::pi * static_cast<double>(k) / period);
    }
    return t;
  };
  const auto fast = sine(60.0, 40000);
  const auto df = decompose_temperature(fast, tau, 1.0);
  EXPECT_GE(amplitude(df.high, 20000), 0.9 * 2.0);
  const auto slow = sine(400000.0, 800000);
  const auto ds = decompose_temperature(slow, tau, 1.0);
  EXPECT_GE(amplitude(ds.low, 0), 0.9 * 2.0);
}

TEST(Decompose, ReconstructionIsExact) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 3);
  std::vector<double> t(5000);
  for (auto& v : t) v = 25 + n(rng);
  const auto d = decompose_temperature(t, 600, 1);
  for (std::size_t k = 0; k < t.size(); ++k) {
    EXPECT_LE(std::abs(t[k] - (d.low[k] + d.high[k])), 1e-12 * 25.0);
  }
  EXPECT_THROW(decompose_temperature(std::vector<double>{}, 1, 1), InputError);
  EXPECT_THROW(decompose_temperature(t, 0, 1), InputError);
}

SignalMatrix ramp_matrix(std::size_t k, std::size_t channels) {
  std::vector<double> t(k);
  std::iota(t.begin(), t.end(), 0.0);
  Matrix v(k, channels);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < channels; ++c) {
      v(r, c) = static_cast<double>(r) + 1000.0 * static_cast<double>(c);
    }
  }
  std::vector<ChannelId> ids(std::begin(kAllChannels), std::begin(kAllChannels) + channels);
  SignalMatrix m(t, ids, v);
  std::vector<double> soc(k);
  for (std::size_t r = 0; r < k; ++r) soc[r] = static_cast<double>(r) / static_cast<double>(k);
  m.set_soc(soc);
  return m;
}

TEST(Windows, BoundaryAndIndexArithmetic) {
  const auto one = make_windows(ramp_matrix(5, 2), ChannelSet::parse("I,V"), 5);
  EXPECT_EQ(one.size(), 1u);
  const auto m = ramp_matrix(100, 2);
  const auto ds = make_windows(m, ChannelSet::parse("I,V"), 50);
  ASSERT_EQ(ds.size(), 51u);
  EXPECT_EQ(ds.window(0).front(), m.values()(0, 0));
  EXPECT_EQ(ds.end_row(0), 49u);
  EXPECT_EQ(ds.target(0), (*m.soc())[49]);
  EXPECT_THROW(make_windows(ramp_matrix(4, 2), ChannelSet::parse("I,V"), 5), InputError);
}

TEST(Windows, ProjectionKeepsSetOrder) {
  const auto m = ramp_matrix(20, 11);
  const auto ds = make_windows(m, ChannelSet::parse("VI"), 4);
  ASSERT_EQ(ds.channels(), (std::vector<ChannelId>{ChannelId::voltage, ChannelId::current}));
  const auto w = ds.window(3);
  ASSERT_EQ(w.size(), 8u);
  EXPECT_EQ(w[0], m.values()(3, m.channel_index(ChannelId::voltage)));
  EXPECT_EQ(w[1], m.values()(3, m.channel_index(ChannelId::current)));
}

TEST(Windows, ValuesMatchSourceAtRandomSpots) {
  const auto m = ramp_matrix(300, 4);
  const auto set = ChannelSet::parse("E,V,I");
  const auto ds = make_windows(m, set, 25);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t i = rng() % ds.size(), t = rng() % 25, c = rng() % 3;
    const std::size_t row = ds.end_row(i) + 1 - 25 + t;
    EXPECT_EQ(ds.window(i)[t * 3 + c], m.values()(row, m.channel_index(set.members[c])));
  }
}

TEST(Windows, MissingChannelOrLabelThrows) {
  EXPECT_THROW(make_windows(ramp_matrix(20, 2), ChannelSet::parse("VIE"), 5), InputError);
  SignalMatrix unlabeled({0, 1, 2}, {ChannelId::voltage}, Matrix(3, 1));
  EXPECT_THROW(make_windows(unlabeled, ChannelSet::parse("V"), 2), InputError);
}

TEST(Normalize, MinMaxMidpointDegenerateAndExtrapolation) {
  std::vector<double> t(11);
  std::iota(t.begin(), t.end(), 0.0);
  Matrix v(11, 2);
  for (int r = 0; r < 11; ++r) {
    v(r, 0) = r;  // 0..10
    v(r, 1) = 7.0;
  }
  v(10, 0) = 20.0;  // outside the training rows
  SignalMatrix m(t, {ChannelId::voltage, ChannelId::current}, v);
  m.set_soc(std::vector<double>(11, 0.5));
  const auto ds = make_windows(m, ChannelSet::parse("VI"), 1);
  const auto n = normalize(ds, {0, 10});
  const auto& sv = n.normalization().for_channel(ChannelId::voltage);
  EXPECT_EQ(sv.min, 0.0);
  EXPECT_EQ(sv.max, 9.0);
  EXPECT_EQ(n.window(0)[0], -1.0);
  EXPECT_EQ(n.window(9)[0], 1.0);
  EXPECT_NEAR(n.window(10)[0], 2.0 * 20.0 / 9.0 - 1.0, 1e-15);
  EXPECT_TRUE(n.normalization().for_channel(ChannelId::current).degenerate);
  for (std::size_t i = 0; i < n.size(); ++i) EXPECT_EQ(n.window(i)[1], 0.0);
  ChannelScaling mid{ChannelId::voltage, 0.0, 10.0, false};
  EXPECT_EQ(mid.apply(5.0), 0.0);
  // The source dataset is untouched.
  EXPECT_EQ(ds.window(10)[0], 20.0);
}

TEST(Split, ChronologicalEightyTwenty) {
  const auto ds = make_windows(ramp_matrix(104, 1), ChannelSet::parse("I"), 5);
  ASSERT_EQ(ds.size(), 100u);
  const auto [train, test] = split_train_test(ds);
  EXPECT_EQ(train.size(), 80u);
  EXPECT_EQ(test.size(), 20u);
  EXPECT_LT(train.time(train.size() - 1), test.time(0));

  const auto five = make_windows(ramp_matrix(9, 1), ChannelSet::parse("I"), 5);
  const auto [tr5, te5] = split_ranges(five);
  EXPECT_EQ(tr5.size(), 4u);
  EXPECT_EQ(te5.size(), 1u);
  EXPECT_EQ(tr5.end, te5.begin);
  EXPECT_EQ(te5.end, five.size());

  const auto four = make_windows(ramp_matrix(8, 1), ChannelSet::parse("I"), 5);
  EXPECT_THROW(split_train_test(four), InputError);
}

TEST(Split, CountsWithinOneOfExact) {
  for (std::size_t n = 5; n < 200; n += 7) {
    const auto ds = make_windows(ramp_matrix(n + 1, 1), ChannelSet::parse("I"), 2);
    const auto [train, test] = split_ranges(ds);
    EXPECT_LE(std::abs(static_cast<double>(train.size()) - 0.8 * static_cast<double>(n)), 1.0);
    EXPECT_EQ(train.size() + test.size(), n);
  }
}

TEST(Split, ByCycleCutsAtCycleBoundary) {
  auto m = ramp_matrix(100, 1);
  std::vector<int> cycles(100);
  for (int r = 0; r < 100; ++r) cycles[r] = 1 + r / 30;
  m.set_cycle(cycles);
  const auto ds = make_windows(m, ChannelSet::parse("I"), 1);
  const auto [train, test] = split_ranges(ds, SplitMode::by_cycle);
  EXPECT_EQ(train.size(), 90u);
  EXPECT_NE(*ds.cycle(train.end - 1), *ds.cycle(test.begin));
}

TEST(ChannelSets, CompactTagsExpandTemperature) {
  const auto viet = ChannelSet::parse("VIET");
  EXPECT_EQ(viet.members,
            (std::vector<ChannelId>{ChannelId::voltage, ChannelId::current, ChannelId::expansion,
                                    ChannelId::temp_surface, ChannelId::temp_hf,
                                    ChannelId::temp_lf}));
  EXPECT_EQ(ChannelSet::parse("VIPhiLambda").members,
            (std::vector<ChannelId>{ChannelId::voltage, ChannelId::current, ChannelId::intensity,
                                    ChannelId::wavelength}));
  EXPECT_EQ(ChannelSet::parse("VIηF").members, ChannelSet::parse("VIetaF").members);
  EXPECT_EQ(ChannelSet::parse("V,I,T").members.size(), 3u);
  EXPECT_THROW(ChannelSet::parse("VIX"), InputError);
  EXPECT_THROW(ChannelSet::parse("VV"), InputError);
  EXPECT_THROW(ChannelSet::parse(""), InputError);
}

TEST(Manifest, SaveLoadAndConcatenate) {
  const auto dir = std::filesystem::temp_directory_path() / "socsense_manifest_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "a.csv") << "time_s,voltage_v,soc\n0,3.7,0.5\n1,3.8,0.6\n";
    std::ofstream(dir / "b.csv") << "time_s,voltage_v,soc\n2,3.9,0.7\n3,4.0,0.8\n";
  }
  DatasetManifest m;
  m.scenario = "test";
  m.cell_type = "none";
  m.files = {{"a.csv", 1, {0}}, {"b.csv", 1, {2}}};
  m.save(dir / "manifest.json");
  const auto loaded = DatasetManifest::load(dir / "manifest.json");
  EXPECT_EQ(loaded.files.size(), 2u);
  EXPECT_EQ(loaded.files[1].cycle_boundaries_s, std::vector<double>{2});
  const auto data = load_dataset(dir / "manifest.json", kSchema);
  EXPECT_EQ(data.steps(), 4u);
  EXPECT_EQ(data.column(ChannelId::voltage), (std::vector<double>{3.7, 3.8, 3.9, 4.0}));
  std::filesystem::remove_all(dir);
}

TEST(Manifest, MissingFileIsInputError) {
  EXPECT_THROW(DatasetManifest::load("/nonexistent/manifest.json"), InputError);
}

}  // namespace
}  // namespace socsense
