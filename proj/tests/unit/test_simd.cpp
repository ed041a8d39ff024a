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
#include <vector>

#include "socsense/simd/kernels.hpp"

namespace socsense::simd {
namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

class KernelEquivalence : public ::testing::TestWithParam<Isa> {
 protected:
  const KernelTable& ref = detail::scalar_table();
  const KernelTable* vec = table_for(GetParam());
  void SetUp() override {
    if (vec == nullptr) GTEST_SKIP() << isa_name(GetParam()) << " not available";
  }
};

TEST_P(KernelEquivalence, DotAndSumSquares) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {0, 1, 3, 4, 5, 7, 8, 16, 17, 33, 100}) {
    const auto a = random_vec(n, rng), b = random_vec(n, rng);
    EXPECT_LE(rel_err(vec->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n)), 1e-12);
    EXPECT_LE(rel_err(vec->sum_squares(a.data(), n), ref.sum_squares(a.data(), n)), 1e-12);
  }
}

TEST_P(KernelEquivalence, MatrixVectorKernels) {
  std::mt19937_64 rng(2);
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{1, 1}, {4, 3}, {16, 16},
                            {64, 17}, {7, 100}, {400, 101}}) {
    const auto w = random_vec(rows * cols, rng);
    const auto x = random_vec(cols, rng), y = random_vec(rows, rng);
    auto y1 = random_vec(rows, rng);
    auto y2 = y1;
    ref.gemv_acc(w.data(), rows, cols, x.data(), y1.data());
    vec->gemv_acc(w.data(), rows, cols, x.data(), y2.data());
    for (std::size_t i = 0; i < rows; ++i) EXPECT_LE(rel_err(y1[i], y2[i]), 1e-12);

    auto x1 = random_vec(cols, rng);
    auto x2 = x1;
    ref.gemv_t_acc(w.data(), rows, cols, y.data(), x1.data());
    vec->gemv_t_acc(w.data(), rows, cols, y.data(), x2.data());
    for (std::size_t i = 0; i < cols; ++i) EXPECT_LE(rel_err(x1[i], x2[i]), 1e-12);

    auto w1 = w, w2 = w;
    ref.ger_acc(w1.data(), rows, cols, y.data(), x.data());
    vec->ger_acc(w2.data(), rows, cols, y.data(), x.data());
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_LE(rel_err(w1[i], w2[i]), 1e-12);
  }
}

TEST_P(KernelEquivalence, AxpyAndScale) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {0, 1, 5, 8, 13, 64}) {
    const auto x = random_vec(n, rng);
    auto y1 = random_vec(n, rng);
    auto y2 = y1;
    ref.axpy(0.37, x.data(), y1.data(), n);
    vec->axpy(0.37, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_LE(rel_err(y1[i], y2[i]), 1e-15);
    ref.scale(-1.7, y1.data(), n);
    vec->scale(-1.7, y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_LE(rel_err(y1[i], y2[i]), 1e-15);
  }
}

TEST_P(KernelEquivalence, AdamStepIsBitIdentical) {
  std::mt19937_64 rng(4);
  for (std::size_t n : {1, 3, 4, 9, 64, 257}) {
    auto p1 = random_vec(n, rng), m1 = random_vec(n, rng, 0.1), v1 = random_vec(n, rng, 0.01);
    for (auto& v : v1) v = std::abs(v);
    const auto g = random_vec(n, rng);
    auto p2 = p1, m2 = m1, v2 = v1;
    const AdamCoefficients k{1e-3, 0.9, 0.999, 1e-8, 1.0 / (1 - 0.9 * 0.9 * 0.9),
                             1.0 / (1 - 0.999 * 0.999 * 0.999)};
    ref.adam_step(p1.data(), g.data(), m1.data(), v1.data(), n, k);
    vec->adam_step(p2.data(), g.data(), m2.data(), v2.data(), n, k);
    EXPECT_EQ(p1, p2);
    EXPECT_EQ(m1, m2);
    EXPECT_EQ(v1, v2);
  }
}

TEST_P(KernelEquivalence, Activations) {
  std::vector<double> xs;
  for (double x = -40; x <= 40; x += 0.0137) xs.push_back(x);
  for (double x : {0.0, -0.0, 1e-300, -1e-300, 700.0, -700.0, 1e6, -1e6}) xs.push_back(x);
  auto s1 = xs, s2 = xs, t1 = xs, t2 = xs;
  ref.sigmoid(s1.data(), s1.size());
  vec->sigmoid(s2.data(), s2.size());
  ref.tanh(t1.data(), t1.size());
  vec->tanh(t2.data(), t2.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_NEAR(s1[i], s2[i], 1e-15) << xs[i];
    EXPECT_NEAR(t1[i], t2[i], 1e-15) << xs[i];
    EXPECT_GE(s2[i], 0.0);
    EXPECT_LE(s2[i], 1.0);
    EXPECT_LE(std::abs(t2[i]), 1.0);
  }
}

INSTANTIATE_TEST_SUITE_P(Isas, KernelEquivalence, ::testing::Values(Isa::avx2, Isa::neon),
                         [](const auto& info) { return std::string(isa_name(info.param)); });

TEST(Dispatch, ScalarAlwaysAvailable) {
  const auto isas = available();
  ASSERT_FALSE(isas.empty());
  EXPECT_EQ(isas.front(), Isa::scalar);
  EXPECT_NE(table_for(Isa::scalar), nullptr);
  EXPECT_EQ(table_for(active().isa)->isa, active().isa);
}

}  // namespace
}  // namespace socsense::simd
