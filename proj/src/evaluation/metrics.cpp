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

#include "socsense/evaluation/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "socsense/error.hpp"

namespace socsense {

namespace {

void check_pair(std::span<const double> y, std::span<const double> y_hat) {
  if (y.empty()) throw InputError("metric over an empty series");
  if (y.size() != y_hat.size()) {
    throw InputError("metric length mismatch: " + std::to_string(y.size()) + " vs " +
                     std::to_string(y_hat.size()));
  }
}

double mean_abs(std::span<const double> e) {
  double s = 0.0;
  for (double v : e) s += std::abs(v);
  return s / static_cast<double>(e.size());
}

double root_mean_square(std::span<const double> e) {
  double s = 0.0;
  for (double v : e) s += v * v;
  return std::sqrt(s / static_cast<double>(e.size()));
}

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double mae(std::span<const double> y, std::span<const double> y_hat) {
  check_pair(y, y_hat);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(y_hat[i] - y[i]);
  return s / static_cast<double>(y.size());
}

double rmse(std::span<const double> y, std::span<const double> y_hat) {
  check_pair(y, y_hat);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double e = y_hat[i] - y[i];
    s += e * e;
  }
  return std::sqrt(s / static_cast<double>(y.size()));
}

SteadyStateResult steady_state_filter(std::span<const double> errors, double threshold) {
  if (errors.empty()) throw InputError("steady-state filter over an empty series");
  SteadyStateResult r;
  r.mask.assign(errors.size(), 0);
  std::size_t start = 0;
  for (std::size_t i = errors.size(); i-- > 0;) {
    if (!(std::abs(errors[i]) < threshold)) {
      start = i + 1;
      break;
    }
  }
  if (start == errors.size()) return r;
  r.start = start;
  std::fill(r.mask.begin() + static_cast<std::ptrdiff_t>(start), r.mask.end(), 1);
  const auto suffix = errors.subspan(start);
  r.count = suffix.size();
  r.mae = mean_abs(suffix);
  r.rmse = root_mean_square(suffix);
  return r;
}

MetricReport evaluate_predictions(std::span<const double> y, std::span<const double> y_hat,
                                  double threshold) {
  check_pair(y, y_hat);
  MetricReport r;
  r.samples = y.size();
  r.errors.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r.errors[i] = y_hat[i] - y[i];
  r.mae = mean_abs(r.errors);
  r.rmse = root_mean_square(r.errors);
  r.steady = steady_state_filter(r.errors, threshold);
  // Power-mean inequality; the slack only absorbs summation rounding.
  auto ordered = [](double q, double m) { return q >= m * (1.0 - 1e-12); };
  if (!ordered(r.rmse, r.mae) || (r.steady.converged() && !ordered(r.steady.rmse, r.steady.mae))) {
    throw NumericError("metric invariant violated: RMSE < MAE");
  }
  return r;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw InputError("spearman needs two equal-length series of at least two values");
  }
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace socsense
