/******************************************************************************
 * Copyright 2026 The ipend Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/


#include <cstring>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ipend/fuzzy.hpp"
#include "ipend/kernels.hpp"

namespace ipend {
namespace {

using kernels::Isa;

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

class KernelEquivalenceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!kernels::isa_available(Isa::avx2)) GTEST_SKIP() << "AVX2 variant not available";
  }
};

TEST_F(KernelEquivalenceTest, FuzzyBatchBitwiseEqual) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  FuzzySystem fs = default_fuzzy_system();
  fs.input_scale1 = 1.7;
  fs.output_scale = 40.0;
  const FuzzyEngine engine(fs);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 64u, 1001u}) {
    std::vector<double> a(n), b(n), s(n), v(n);
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = dist(rng);
      b[k] = dist(rng);
    }
    if (n > 4) {
      a[0] = 0.0;
      b[0] = 0.0;
      a[1] = 1e9;
      b[2] = -1e9;
      a[3] = -1.0 / 3.0 / 1.7;
    }
    engine.infer_batch(a, b, s, Isa::scalar);
    engine.infer_batch(a, b, v, Isa::avx2);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_TRUE(bitwise_equal(s[k], v[k])) << n << ":" << k << " " << s[k] << " vs " << v[k];
      EXPECT_TRUE(bitwise_equal(s[k], engine.infer(a[k], b[k])));
    }
  }
}

TEST_F(KernelEquivalenceTest, ReductionsAgree) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> dist;
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 9u, 100u, 40001u}) {
    std::vector<double> y(n);
    for (double& v : y) v = dist(rng);
    EXPECT_TRUE(bitwise_equal(kernels::max_value(y, Isa::scalar), kernels::max_value(y, Isa::avx2)));
    EXPECT_TRUE(bitwise_equal(kernels::min_value(y, Isa::scalar), kernels::min_value(y, Isa::avx2)));
    for (double tol : {0.0, 0.5, 2.0, 10.0}) {
      EXPECT_EQ(kernels::last_outside_band(y, 0.1, tol, Isa::scalar),
                kernels::last_outside_band(y, 0.1, tol, Isa::avx2))
          << n << " " << tol;
    }
  }
}

TEST(KernelDispatchTest, OverrideSelectsVariant) {
  kernels::set_isa_override(Isa::scalar);
  EXPECT_EQ(kernels::active_isa(), Isa::scalar);
  kernels::set_isa_override(std::nullopt);
  EXPECT_TRUE(kernels::isa_available(kernels::active_isa()));
  EXPECT_STREQ(kernels::isa_name(Isa::avx2), "avx2");
  if (!kernels::isa_available(Isa::avx2)) {
    EXPECT_THROW(kernels::set_isa_override(Isa::avx2), std::invalid_argument);
  }
}

TEST(KernelDispatchTest, ScalarReductions) {
  const std::vector<double> y{0.0, 0.5, 1.02, 0.99, 1.0, 1.01};
  EXPECT_EQ(kernels::last_outside_band(y, 1.0, 0.015, Isa::scalar), 2);
  EXPECT_EQ(kernels::last_outside_band(y, 1.0, 2.0, Isa::scalar), -1);
  EXPECT_EQ(kernels::max_value(y, Isa::scalar), 1.02);
  EXPECT_EQ(kernels::min_value(y, Isa::scalar), 0.0);
  std::vector<double> out(1);
  EXPECT_THROW(kernels::fuzzy_infer_batch(default_fuzzy_system().tables(), y, y, out), std::invalid_argument);
}

}  // namespace
}  // namespace ipend
