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

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#define SOCSENSE_AVX2 __attribute__((target("avx2,fma")))

namespace socsense::simd {
namespace {

SOCSENSE_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

SOCSENSE_AVX2 double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

SOCSENSE_AVX2 void gemv_acc(const double* w, std::size_t rows, std::size_t cols,
                            const double* x, double* y) {
  std::size_t r = 0;
  // Four rows at a time share each load of x.
  for (; r + 4 <= rows; r += 4) {
    const double* w0 = w + r * cols;
    const double* w1 = w0 + cols;
    const double* w2 = w1 + cols;
    const double* w3 = w2 + cols;
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd();
    __m256d a3 = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      const __m256d xv = _mm256_loadu_pd(x + c);
      a0 = _mm256_fmadd_pd(_mm256_loadu_pd(w0 + c), xv, a0);
      a1 = _mm256_fmadd_pd(_mm256_loadu_pd(w1 + c), xv, a1);
      a2 = _mm256_fmadd_pd(_mm256_loadu_pd(w2 + c), xv, a2);
      a3 = _mm256_fmadd_pd(_mm256_loadu_pd(w3 + c), xv, a3);
    }
    // Reduce the four accumulators into one vector {s0, s1, s2, s3}.
    const __m256d h01 = _mm256_hadd_pd(a0, a1);
    const __m256d h23 = _mm256_hadd_pd(a2, a3);
    __m256d sums = _mm256_add_pd(_mm256_permute2f128_pd(h01, h23, 0x20),
                                 _mm256_permute2f128_pd(h01, h23, 0x31));
    if (c < cols) {
      alignas(32) double tail[4] = {0.0, 0.0, 0.0, 0.0};
      for (; c < cols; ++c) {
        tail[0] += w0[c] * x[c];
        tail[1] += w1[c] * x[c];
        tail[2] += w2[c] * x[c];
        tail[3] += w3[c] * x[c];
      }
      sums = _mm256_add_pd(sums, _mm256_load_pd(tail));
    }
    _mm256_storeu_pd(y + r, _mm256_add_pd(_mm256_loadu_pd(y + r), sums));
  }
  for (; r < rows; ++r) y[r] += dot(w + r * cols, x, cols);
}

SOCSENSE_AVX2 void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

SOCSENSE_AVX2 void gemv_t_acc(const double* w, std::size_t rows, std::size_t cols,
                              const double* y, double* x) {
  for (std::size_t r = 0; r < rows; ++r) axpy(y[r], w + r * cols, x, cols);
}

SOCSENSE_AVX2 void ger_acc(double* w, std::size_t rows, std::size_t cols, const double* y,
                           const double* x) {
  for (std::size_t r = 0; r < rows; ++r) axpy(y[r], x, w + r * cols, cols);
}

SOCSENSE_AVX2 void scale(double a, double* x, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

SOCSENSE_AVX2 double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

// Same operation order as the scalar kernel and no fused multiply-adds, so
// results are bit-identical.
SOCSENSE_AVX2 void adam_step(double* p, const double* g, double* m, double* v, std::size_t n,
                             const AdamCoefficients& k) {
  const __m256d b1 = _mm256_set1_pd(k.beta1);
  const __m256d b2 = _mm256_set1_pd(k.beta2);
  const __m256d omb1 = _mm256_set1_pd(1.0 - k.beta1);
  const __m256d omb2 = _mm256_set1_pd(1.0 - k.beta2);
  const __m256d c1 = _mm256_set1_pd(k.inv_bias1);
  const __m256d c2 = _mm256_set1_pd(k.inv_bias2);
  const __m256d lr = _mm256_set1_pd(k.learning_rate);
  const __m256d eps = _mm256_set1_pd(k.epsilon);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d gv = _mm256_loadu_pd(g + i);
    const __m256d mv = _mm256_add_pd(_mm256_mul_pd(b1, _mm256_loadu_pd(m + i)),
                                     _mm256_mul_pd(omb1, gv));
    const __m256d vv = _mm256_add_pd(_mm256_mul_pd(b2, _mm256_loadu_pd(v + i)),
                                     _mm256_mul_pd(omb2, _mm256_mul_pd(gv, gv)));
    _mm256_storeu_pd(m + i, mv);
    _mm256_storeu_pd(v + i, vv);
    const __m256d m_hat = _mm256_mul_pd(mv, c1);
    const __m256d v_hat = _mm256_mul_pd(vv, c2);
    const __m256d step =
        _mm256_div_pd(_mm256_mul_pd(lr, m_hat), _mm256_add_pd(_mm256_sqrt_pd(v_hat), eps));
    _mm256_storeu_pd(p + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), step));
  }
  if (i < n) detail::scalar_table().adam_step(p + i, g + i, m + i, v + i, n - i, k);
}

// exp(x) for x <= 0 (callers pass -|x|). Range reduction x = n*ln2 + r,
// |r| <= ln2/2, then a degree-12 Taylor polynomial; relative error ~2e-16.
SOCSENSE_AVX2 inline __m256d exp_nonpositive(__m256d x) {
  x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93147180369123816490e-01), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.90821492927058770002e-10), r);
  static constexpr double kInvFact[] = {1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
                                        1.0 / 362880.0,    1.0 / 40320.0,    1.0 / 5040.0,
                                        1.0 / 720.0,       1.0 / 120.0,      1.0 / 24.0,
                                        1.0 / 6.0,         0.5,              1.0,
                                        1.0};
  __m256d p = _mm256_set1_pd(kInvFact[0]);
  for (int i = 1; i < 13; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kInvFact[i]));
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i bits =
      _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(n32), _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

SOCSENSE_AVX2 void sigmoid(double* x, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d neg_abs = _mm256_or_pd(v, sign_mask);
    const __m256d e = exp_nonpositive(neg_abs);
    const __m256d inv = _mm256_div_pd(one, _mm256_add_pd(one, e));
    // v >= 0: 1/(1+e); v < 0: e/(1+e)
    const __m256d neg = _mm256_cmp_pd(v, _mm256_setzero_pd(), _CMP_LT_OQ);
    _mm256_storeu_pd(x + i, _mm256_blendv_pd(inv, _mm256_mul_pd(e, inv), neg));
  }
  if (i < n) detail::scalar_table().sigmoid(x + i, n - i);
}

SOCSENSE_AVX2 void tanh(double* x, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d sign = _mm256_and_pd(v, sign_mask);
    const __m256d neg_abs = _mm256_or_pd(v, sign_mask);
    const __m256d e = exp_nonpositive(_mm256_add_pd(neg_abs, neg_abs));
    const __m256d t = _mm256_div_pd(_mm256_sub_pd(one, e), _mm256_add_pd(one, e));
    _mm256_storeu_pd(x + i, _mm256_or_pd(t, sign));
  }
  if (i < n) detail::scalar_table().tanh(x + i, n - i);
}

constexpr KernelTable kAvx2{Isa::avx2, dot,       gemv_acc, gemv_t_acc, ger_acc, axpy,
                            scale,     sum_squares, adam_step, sigmoid,  tanh};

}  // namespace

namespace detail {
const KernelTable* avx2_table() {
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
  return nullptr;
}
}  // namespace detail

}  // namespace socsense::simd

#else

namespace socsense::simd::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace socsense::simd::detail

#endif
