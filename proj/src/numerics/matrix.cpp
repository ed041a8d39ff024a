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

#include "socsense/numerics/matrix.hpp"

#include <cmath>

#include "socsense/error.hpp"
#include "socsense/simd/kernels.hpp"

namespace socsense {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("matrix " + std::to_string(rows) + "x" + std::to_string(cols) + " given " +
                     std::to_string(data_.size()) + " values");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::string Matrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Vector affine(ConstMatrixView w, std::span<const double> x, std::span<const double> b) {
  if (w.cols != x.size() || w.rows != b.size()) {
    throw ShapeError("affine: W is " + std::to_string(w.rows) + "x" + std::to_string(w.cols) +
                     ", x has " + std::to_string(x.size()) + " entries, b has " +
                     std::to_string(b.size()));
  }
  Vector out(b.begin(), b.end());
  simd::active().gemv_acc(w.data, w.rows, w.cols, x.data(), out.data());
  return out;
}

Vector affine(const Matrix& w, std::span<const double> x, std::span<const double> b) {
  return affine(ConstMatrixView{w.data().data(), w.rows(), w.cols()}, x, b);
}

bool all_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace socsense
