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

#include "socsense/simd/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace socsense::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void gemv_acc(const double* w, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] += dot(w + r * cols, x, cols);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t av = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void gemv_t_acc(const double* w, std::size_t rows, std::size_t cols, const double* y,
                double* x) {
  for (std::size_t r = 0; r < rows; ++r) axpy(y[r], w + r * cols, x, cols);
}

void ger_acc(double* w, std::size_t rows, std::size_t cols, const double* y, const double* x) {
  for (std::size_t r = 0; r < rows; ++r) axpy(y[r], x, w + r * cols, cols);
}

void scale(double a, double* x, std::size_t n) {
  const float64x2_t av = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(av, vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

void adam_step(double* p, const double* g, double* m, double* v, std::size_t n,
               const AdamCoefficients& k) {
  const float64x2_t b1 = vdupq_n_f64(k.beta1);
  const float64x2_t b2 = vdupq_n_f64(k.beta2);
  const float64x2_t omb1 = vdupq_n_f64(1.0 - k.beta1);
  const float64x2_t omb2 = vdupq_n_f64(1.0 - k.beta2);
  const float64x2_t c1 = vdupq_n_f64(k.inv_bias1);
  const float64x2_t c2 = vdupq_n_f64(k.inv_bias2);
  const float64x2_t lr = vdupq_n_f64(k.learning_rate);
  const float64x2_t eps = vdupq_n_f64(k.epsilon);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t gv = vld1q_f64(g + i);
    const float64x2_t mv = vaddq_f64(vmulq_f64(b1, vld1q_f64(m + i)), vmulq_f64(omb1, gv));
    const float64x2_t vv =
        vaddq_f64(vmulq_f64(b2, vld1q_f64(v + i)), vmulq_f64(omb2, vmulq_f64(gv, gv)));
    vst1q_f64(m + i, mv);
    vst1q_f64(v + i, vv);
    const float64x2_t step = vdivq_f64(vmulq_f64(lr, vmulq_f64(mv, c1)),
                                       vaddq_f64(vsqrtq_f64(vmulq_f64(vv, c2)), eps));
    vst1q_f64(p + i, vsubq_f64(vld1q_f64(p + i), step));
  }
  if (i < n) detail::scalar_table().adam_step(p + i, g + i, m + i, v + i, n - i, k);
}

// Activations reuse the scalar reference; exp dominates and NEON has no
// double-precision exp either.
constexpr KernelTable kNeon{Isa::neon, dot,         gemv_acc,  gemv_t_acc,
                            ger_acc,   axpy,        scale,     sum_squares,
                            adam_step, nullptr,     nullptr};

}  // namespace

namespace detail {
const KernelTable* neon_table() {
  static const KernelTable table = [] {
    KernelTable t = kNeon;
    t.sigmoid = scalar_table().sigmoid;
    t.tanh = scalar_table().tanh;
    return t;
  }();
  return &table;
}
}  // namespace detail

}  // namespace socsense::simd

#else

namespace socsense::simd::detail {
const KernelTable* neon_table() { return nullptr; }
}  // namespace socsense::simd::detail

#endif
