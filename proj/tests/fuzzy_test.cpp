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


#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "ipend/fuzzy.hpp"

namespace ipend {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Membership straight from the breakpoint definition, case by case.
double oracle_membership(const MembershipFunction& mf, double x) {
  const auto& bp = mf.breakpoints();
  if (mf.kind() == MembershipKind::triangular) {
    const double a = bp[0], b = bp[1], c = bp[2];
    if (x <= a || x >= c) return x == b ? 1.0 : 0.0;
    return x <= b ? (x - a) / (b - a) : (c - x) / (c - b);
  }
  const double a = bp[0], b = bp[1], c = bp[2], d = bp[3];
  if (x >= b && x <= c) return 1.0;
  if (x < b) return a == -kInf ? 1.0 : (x <= a ? 0.0 : (x - a) / (b - a));
  return d == kInf ? 1.0 : (x >= d ? 0.0 : (d - x) / (d - c));
}

double oracle_infer(const FuzzySystem& fs, double in1, double in2) {
  const double x1 = in1 * fs.input_scale1;
  const double x2 = in2 * fs.input_scale2;
  double num = 0.0;
  double den = 0.0;
  for (int rule = 0; rule < 49; ++rule) {
    const int i = rule / 7;
    const int j = rule % 7;
    const double strength =
        std::min(oracle_membership(fs.input1_terms[i], x1), oracle_membership(fs.input2_terms[j], x2));
    num += strength * fs.output_centers[fs.rule_table[i][j]];
    den += strength;
  }
  return num / den * fs.output_scale;
}

FuzzySystem skewed_system() {
  FuzzySystem fs = default_fuzzy_system();
  fs.input1_terms = {
      MembershipFunction::trapezoidal(-kInf, -kInf, -2.0, -1.2),
      MembershipFunction::triangular(-2.0, -1.2, -0.5),
      MembershipFunction::triangular(-1.2, -0.5, 0.0),
      MembershipFunction::trapezoidal(-0.5, -0.1, 0.1, 0.5),
      MembershipFunction::triangular(0.0, 0.5, 1.2),
      MembershipFunction::triangular(0.5, 1.2, 2.0),
      MembershipFunction::trapezoidal(1.2, 2.0, kInf, kInf),
  };
  fs.output_centers = {-3.0, -1.5, -0.4, 0.0, 0.4, 1.5, 3.0};
  fs.input_scale1 = 2.5;
  fs.input_scale2 = 0.7;
  fs.output_scale = 12.0;
  return fs;
}

TEST(MembershipTest, TriangleExamples) {
  const auto tri = MembershipFunction::triangular(-1.0, 0.0, 1.0);
  EXPECT_EQ(fuzzify(tri, 0.0), 1.0);
  EXPECT_EQ(fuzzify(tri, 0.5), 0.5);
  EXPECT_EQ(fuzzify(tri, -1.0), 0.0);
  EXPECT_EQ(fuzzify(tri, 3.0), 0.0);
}

TEST(MembershipTest, ShoulderSaturates) {
  const auto shoulder = MembershipFunction::trapezoidal(0.5, 0.75, kInf, kInf);
  EXPECT_EQ(fuzzify(shoulder, 2.0), 1.0);
  EXPECT_EQ(fuzzify(shoulder, 1e300), 1.0);
  EXPECT_EQ(fuzzify(shoulder, 0.625), 0.5);
  EXPECT_EQ(fuzzify(shoulder, 0.0), 0.0);
}

TEST(MembershipTest, TrianglePeakIsExactlyOne) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int k = 0; k < 200; ++k) {
    double v[3] = {dist(rng), dist(rng), dist(rng)};
    std::sort(v, v + 3);
    if (v[1] - v[0] < 1e-6 || v[2] - v[1] < 1e-6) continue;
    EXPECT_EQ(fuzzify(MembershipFunction::triangular(v[0], v[1], v[2]), v[1]), 1.0);
  }
}

TEST(MembershipTest, ValuesStayInUnitInterval) {
  const FuzzySystem fs = skewed_system();
  for (double x = -5.0; x <= 5.0; x += 0.01) {
    for (const auto& mf : fs.input1_terms) {
      const double mu = fuzzify(mf, x);
      EXPECT_GE(mu, 0.0);
      EXPECT_LE(mu, 1.0);
    }
  }
}

TEST(MembershipTest, RejectsMalformedBreakpoints) {
  EXPECT_THROW(MembershipFunction::triangular(1.0, 0.0, 2.0), std::invalid_argument);
  EXPECT_THROW(MembershipFunction::triangular(0.0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(MembershipFunction::triangular(-kInf, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(MembershipFunction::trapezoidal(0.0, NAN, 1.0, 2.0), std::invalid_argument);
  EXPECT_THROW(MembershipFunction::trapezoidal(0.0, 1.0, kInf, 3.0), std::invalid_argument);
}

TEST(FuzzySystemTest, DefaultSystemShape) {
  const FuzzySystem fs = default_fuzzy_system();
  EXPECT_NO_THROW(fs.validate());
  EXPECT_TRUE(fs.is_odd_symmetric());
  EXPECT_TRUE(fs.covers_real_line());
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) EXPECT_EQ(fs.rule_table[i][j], std::clamp(i + j - 3, 0, 6));
    EXPECT_DOUBLE_EQ(fs.output_centers[i], (i - 3) / 3.0);
  }
  EXPECT_EQ(term_index("NB"), 0);
  EXPECT_EQ(term_index("PB"), 6);
  EXPECT_EQ(term_index("XX"), -1);
}

TEST(FuzzySystemTest, ValidationRejectsBrokenSystems) {
  FuzzySystem fs = default_fuzzy_system();
  fs.rule_table[0][0] = 3;
  EXPECT_THROW(fs.validate(), std::invalid_argument);
  fs = default_fuzzy_system();
  fs.rule_table[2][2] = 9;
  EXPECT_THROW(fs.validate(), std::invalid_argument);
  fs = default_fuzzy_system();
  fs.output_scale = 0.0;
  EXPECT_THROW(fs.validate(), std::invalid_argument);
  fs = default_fuzzy_system();
  fs.input1_terms[0] = MembershipFunction::triangular(-1.0, -0.9, -0.8);
  EXPECT_FALSE(fs.covers_real_line());
  EXPECT_THROW(fs.validate(), std::invalid_argument);
  EXPECT_THROW(FuzzyEngine{fs}, std::invalid_argument);
}

TEST(FuzzyInferTest, MatchesRuleEnumerationOracle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1.6, 1.6);
  for (const FuzzySystem& fs : {default_fuzzy_system(), skewed_system()}) {
    const FuzzyEngine engine(fs);
    for (int k = 0; k < 1000; ++k) {
      const double a = dist(rng) / fs.input_scale1;
      const double b = dist(rng) / fs.input_scale2;
      EXPECT_NEAR(engine.infer(a, b), oracle_infer(fs, a, b), 1e-12) << a << " " << b;
      EXPECT_NEAR(fuzzy_infer(fs, a, b), oracle_infer(fs, a, b), 1e-12);
    }
  }
}

TEST(FuzzyInferTest, OriginMapsToZero) { EXPECT_EQ(fuzzy_infer(default_fuzzy_system(), 0.0, 0.0), 0.0); }

TEST(FuzzyInferTest, OddSymmetry) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const FuzzyEngine engine(default_fuzzy_system());
  for (int k = 0; k < 1000; ++k) {
    const double a = dist(rng);
    const double b = dist(rng);
    EXPECT_NEAR(engine.infer(-a, -b), -engine.infer(a, b), 1e-12);
  }
}

TEST(FuzzyInferTest, OutputBoundedByLargestCenter) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  for (const FuzzySystem& fs : {default_fuzzy_system(), skewed_system()}) {
    const FuzzyEngine engine(fs);
    double zmax = 0.0;
    for (double z : fs.output_centers) zmax = std::max(zmax, std::abs(z));
    for (int k = 0; k < 1000; ++k) {
      EXPECT_LE(std::abs(engine.infer(dist(rng), dist(rng))), fs.output_scale * zmax * (1.0 + 1e-15));
    }
  }
}

TEST(FuzzyInferTest, SaturatedCornerGivesCornerRule) {
  for (const FuzzySystem& fs : {default_fuzzy_system(), skewed_system()}) {
    const double far = 1e3;
    EXPECT_DOUBLE_EQ(fuzzy_infer(fs, far, far), fs.output_centers[fs.rule_table[6][6]] * fs.output_scale);
    EXPECT_DOUBLE_EQ(fuzzy_infer(fs, -far, -far), fs.output_centers[fs.rule_table[0][0]] * fs.output_scale);
    EXPECT_DOUBLE_EQ(fuzzy_infer(fs, far, far), oracle_infer(fs, far, far));
  }
}

TEST(FuzzyInferTest, CoveragePositiveOnGrid) {
  const FuzzySystem fs = default_fuzzy_system();
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j <= 200; ++j) {
      const double x1 = -1.5 + 3.0 * i / 200.0;
      const double x2 = -1.5 + 3.0 * j / 200.0;
      double total = 0.0;
      for (int r = 0; r < 49; ++r) {
        total += std::min(fuzzify(fs.input1_terms[r / 7], x1), fuzzify(fs.input2_terms[r % 7], x2));
      }
      ASSERT_GT(total, 0.0) << x1 << " " << x2;
    }
  }
}

TEST(FuzzyInferTest, LipschitzOnGrid) {
  const FuzzyEngine engine(default_fuzzy_system());
  constexpr double h = 1e-3;
  double worst = 0.0;
  for (double a = -1.5; a <= 1.5; a += 0.0137) {
    for (double b = -1.5; b <= 1.5; b += 0.0137) {
      const double u = engine.infer(a, b);
      worst = std::max(worst, std::abs(engine.infer(a + h, b) - u) / h);
      worst = std::max(worst, std::abs(engine.infer(a, b + h) - u) / h);
    }
  }
  EXPECT_LT(worst, 3.0);
}

}  // namespace
}  // namespace ipend
