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

#include "socsense/synthcell/curve.hpp"

#include <algorithm>

#include "socsense/error.hpp"

namespace socsense {

PiecewiseLinear::PiecewiseLinear(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2) {
    throw InputError("piecewise-linear table needs matching knots, at least two");
  }
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw InputError("piecewise-linear knots must ascend");
  }
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - x_.begin());
  const double w = (x - x_[j - 1]) / (x_[j] - x_[j - 1]);
  return y_[j - 1] + w * (y_[j] - y_[j - 1]);
}

bool PiecewiseLinear::strictly_increasing() const {
  for (std::size_t i = 1; i < y_.size(); ++i) {
    if (!(y_[i] > y_[i - 1])) return false;
  }
  return !y_.empty();
}

bool PiecewiseLinear::strictly_decreasing() const {
  for (std::size_t i = 1; i < y_.size(); ++i) {
    if (!(y_[i] < y_[i - 1])) return false;
  }
  return !y_.empty();
}

}  // namespace socsense
