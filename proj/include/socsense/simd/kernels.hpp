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

#pragma once

// Runtime-dispatched inner loops. Every kernel has a scalar reference
// implementation; vector variants must agree with it to rounding (and bit
// for bit where the operation order is identical, as in adam_step).

#include <cstddef>
#include <string_view>
#include <vector>

namespace socsense::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct AdamCoefficients {
  double learning_rate;
  double beta1;
  double beta2;
  double epsilon;
  double inv_bias1;  // 1 / (1 - beta1^t)
  double inv_bias2;  // 1 / (1 - beta2^t)
};

struct KernelTable {
  Isa isa;

  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[r] += sum_c w[r*cols + c] * x[c]
  void (*gemv_acc)(const double* w, std::size_t rows, std::size_t cols, const double* x,
                   double* y);
  // x[c] += sum_r w[r*cols + c] * y[r]
  void (*gemv_t_acc)(const double* w, std::size_t rows, std::size_t cols, const double* y,
                     double* x);
  // w[r*cols + c] += y[r] * x[c]
  void (*ger_acc)(double* w, std::size_t rows, std::size_t cols, const double* y,
                  const double* x);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // x[i] *= a
  void (*scale)(double a, double* x, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  void (*adam_step)(double* params, const double* grads, double* m, double* v, std::size_t n,
                    const AdamCoefficients& k);
  // In-place logistic and hyperbolic tangent.
  void (*sigmoid)(double* x, std::size_t n);
  void (*tanh)(double* x, std::size_t n);
};

/// Kernels selected for this process: the best ISA the CPU supports, unless
/// SOCSENSE_SIMD=scalar|avx2|neon overrides it.
const KernelTable& active();

/// Kernels for a specific ISA; nullptr when not compiled in or not supported.
const KernelTable* table_for(Isa isa);

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available();

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();
const KernelTable* neon_table();
}  // namespace detail

}  // namespace socsense::simd
