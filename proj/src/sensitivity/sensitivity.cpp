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

#include "socsense/sensitivity/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "socsense/error.hpp"
#include "socsense/numerics/rng.hpp"

namespace socsense {

SensitivityAnalyzer::SensitivityAnalyzer(const LstmModel& model,
                                         const Normalization& normalization,
                                         std::span<const IntervalPartition> partitions)
    : model_(&model), predict_(model) {
  for (ChannelId id : model.channels()) {
    const IntervalPartition* found = nullptr;
    for (const auto& p : partitions) {
      if (p.channel == id) found = &p;
    }
    partitions_.push_back(found);
    std::vector<double> subs;
    if (found) {
      const ChannelScaling& scale = normalization.for_channel(id);
      for (double m : found->means) subs.push_back(scale.apply(m));
    }
    substitutes_.push_back(std::move(subs));
  }
}

double SensitivityAnalyzer::channel_phi(std::span<const double> window, std::size_t steps,
                                        std::size_t column, double baseline) {
  const IntervalPartition* part = partitions_[column];
  if (!part) {
    throw InputError("no interval partition for channel " +
                     std::string(channel_symbol(model_->channels()[column])));
  }
  const std::size_t width = model_->input_dim();
  scratch_.assign(window.begin(), window.end());
  double phi = 0.0;
  for (std::size_t h = 0; h < part->intervals(); ++h) {
    const double prob = part->probabilities[h];
    if (prob == 0.0) continue;
    const double value = substitutes_[column][h];
    for (std::size_t t = 0; t < steps; ++t) scratch_[t * width + column] = value;
    phi += prob * std::abs(baseline - predict_(scratch_, steps));
  }
  return phi;
}

double SensitivityAnalyzer::at(std::span<const double> window, std::size_t steps,
                               ChannelId channel) {
  if (window.size() != steps * model_->input_dim()) {
    throw ShapeError("sensitivity: window size does not match steps x channels");
  }
  const auto& ch = model_->channels();
  const auto it = std::find(ch.begin(), ch.end(), channel);
  if (it == ch.end()) {
    throw InputError("model has no channel " + std::string(channel_symbol(channel)));
  }
  const double baseline = predict_(window, steps);
  return channel_phi(window, steps, static_cast<std::size_t>(it - ch.begin()), baseline);
}

std::vector<double> SensitivityAnalyzer::all(std::span<const double> window, std::size_t steps,
                                             double* baseline) {
  if (window.size() != steps * model_->input_dim()) {
    throw ShapeError("sensitivity: window size does not match steps x channels");
  }
  const double base = predict_(window, steps);
  if (baseline) *baseline = base;
  std::vector<double> out(model_->input_dim());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = channel_phi(window, steps, c, base);
  return out;
}

double sensitivity_at(const LstmModel& model, std::span<const double> window, std::size_t steps,
                      std::span<const IntervalPartition> partitions,
                      const Normalization& normalization, ChannelId channel) {
  SensitivityAnalyzer analyzer(model, normalization, partitions);
  return analyzer.at(window, steps, channel);
}

SensitivityProfile profile(const LstmModel& model, const SignalMatrix& matrix,
                           std::span<const IntervalPartition> partitions,
                           const Normalization& normalization, std::size_t window) {
  if (window == 0) throw InputError("profile: window length must be positive");
  if (matrix.steps() < window) {
    throw InputError("profile: " + std::to_string(matrix.steps()) +
                     " steps is fewer than window " + std::to_string(window));
  }
  const auto& channels = model.channels();
  std::vector<std::size_t> cols;
  for (ChannelId id : channels) {
    if (!matrix.has_channel(id)) {
      throw InputError("profile: model channels [" + join_symbols(channels) +
                       "] not all present in data [" + join_symbols(matrix.channels()) + "]");
    }
    cols.push_back(matrix.channel_index(id));
  }
  Normalization ordered;
  for (ChannelId id : channels) ordered.channels.push_back(normalization.for_channel(id));

  const std::size_t k = matrix.steps();
  const std::size_t l = channels.size();
  std::vector<double> rows(k * l);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < l; ++c) rows[r * l + c] = matrix.values()(r, cols[c]);
    ordered.apply_row({rows.data() + r * l, l});
  }

  SensitivityAnalyzer analyzer(model, ordered, partitions);
  SensitivityProfile out;
  out.channels = channels;
  out.window = window;
  const std::size_t n_eval = k - window + 1;
  out.values = Matrix(l, n_eval);
  if (matrix.phase()) out.phases.emplace();
  for (std::size_t i = 0; i < n_eval; ++i) {
    const std::size_t end = i + window - 1;
    double base = 0.0;
    const auto phi = analyzer.all({rows.data() + i * l, window * l}, window, &base);
    for (std::size_t c = 0; c < l; ++c) out.values(c, i) = phi[c];
    out.steps.push_back(end + 1);
    out.times.push_back(matrix.timestamps()[end]);
    out.predictions.push_back(base);
    if (out.phases) out.phases->push_back((*matrix.phase())[end]);
  }
  for (ChannelId id : channels) {
    for (const auto& p : partitions) {
      if (p.channel == id) out.partitions.push_back(p);
    }
  }
  return out;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw InputError("quantile of empty data");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

SensitivitySummary summarize(const SensitivityProfile& profile) {
  if (profile.size() == 0) throw InputError("summarize: empty profile");
  SensitivitySummary out;
  for (std::size_t c = 0; c < profile.channels.size(); ++c) {
    const auto row = profile.values.row(c);
    std::vector<double> v(row.begin(), row.end());
    ChannelSummary s;
    s.channel = profile.channels[c];
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    s.min = *std::min_element(v.begin(), v.end());
    s.max = *std::max_element(v.begin(), v.end());
    s.q1 = quantile(v, 0.25);
    s.median = quantile(v, 0.5);
    s.q3 = quantile(v, 0.75);
    out.channels.push_back(s);
  }
  std::vector<std::size_t> order(out.channels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.channels[a].mean > out.channels[b].mean;
  });
  for (std::size_t i : order) out.ranking.push_back(out.channels[i].channel);
  return out;
}

double perturbation_degradation(const LstmModel& model, const WindowedDataset& data,
                                ChannelId channel, double sigma, std::uint64_t seed) {
  if (data.empty()) throw InputError("perturbation_degradation: empty dataset");
  const auto& ch = model.channels();
  const auto it = std::find(ch.begin(), ch.end(), channel);
  if (it == ch.end()) {
    throw InputError("model has no channel " + std::string(channel_symbol(channel)));
  }
  const std::size_t column = static_cast<std::size_t>(it - ch.begin());
  const std::size_t width = model.input_dim();
  const std::size_t steps = data.window_length();
  Predictor predict(model);
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> scratch;
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto w = data.window(i);
    const double base = predict(w, steps);
    scratch.assign(w.begin(), w.end());
    for (std::size_t t = 0; t < steps; ++t) scratch[t * width + column] += noise(rng);
    total += std::abs(predict(scratch, steps) - base);
  }
  return total / static_cast<double>(data.size());
}

}  // namespace socsense
