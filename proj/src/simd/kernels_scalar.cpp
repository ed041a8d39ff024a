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

#include <cmath>

#include "socsense/simd/kernels.hpp"

namespace socsense::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void gemv_acc(const double* w, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] += dot(w + r * cols, x, cols);
}

void gemv_t_acc(const double* w, std::size_t rows, std::size_t cols, const double* y,
                double* x) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double yr = y[r];
    const double* wr = w + r * cols;
    for (std::size_t c = 0; c < cols; ++c) x[c] += wr[c] * yr;
  }
}

void ger_acc(double* w, std::size_t rows, std::size_t cols, const double* y, const double* x) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double yr = y[r];
    double* wr = w + r * cols;
    for (std::size_t c = 0; c < cols; ++c) wr[c] += yr * x[c];
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

void adam_step(double* p, const double* g, double* m, double* v, std::size_t n,
               const AdamCoefficients& k) {
  const double one_minus_b1 = 1.0 - k.beta1;
  const double one_minus_b2 = 1.0 - k.beta2;
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = k.beta1 * m[i] + one_minus_b1 * g[i];
    v[i] = k.beta2 * v[i] + one_minus_b2 * (g[i] * g[i]);
    const double m_hat = m[i] * k.inv_bias1;
    const double v_hat = v[i] * k.inv_bias2;
    p[i] -= k.learning_rate * m_hat / (std::sqrt(v_hat) + k.epsilon);
  }
}

void sigmoid(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] >= 0.0) {
      x[i] = 1.0 / (1.0 + std::exp(-x[i]));
    } else {
      const double e = std::exp(x[i]);
      x[i] = e / (1.0 + e);
    }
  }
}

void tanh(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::tanh(x[i]);
}

constexpr KernelTable kScalar{Isa::scalar, dot,       gemv_acc, gemv_t_acc, ger_acc, axpy,
                              scale,       sum_squares, adam_step, sigmoid,  tanh};

}  // namespace

namespace detail {
const KernelTable& scalar_table() { return kScalar; }
}  // namespace detail

}  // namespace socsense::simd
