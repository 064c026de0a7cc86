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

#include <cmath>

#include "kernels_impl.hpp"

namespace ipend::kernels {

double fuzzy_infer_one(const FuzzyTables& t, double input1, double input2) {
  constexpr std::size_t n = FuzzyTables::kTerms;
  const double x1 = input1 * t.input1_scale;
  const double x2 = input2 * t.input2_scale;

  std::array<double, n> m1;
  std::array<double, n> m2;
  for (std::size_t i = 0; i < n; ++i) {
    m1[i] = trapezoid_membership(x1, t.a1[i], t.wr1[i], t.d1[i], t.wf1[i]);
    m2[i] = trapezoid_membership(x2, t.a2[i], t.wr2[i], t.d2[i], t.wf2[i]);
  }

  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double mu = std::min(m1[i], m2[j]);
      num += mu * t.rule_center[i * n + j];
      den += mu;
    }
  }
  return num / den * t.output_scale;
}

namespace scalar {

void fuzzy_infer_batch(const FuzzyTables& t, const double* in1, const double* in2, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = fuzzy_infer_one(t, in1[k], in2[k]);
}

std::ptrdiff_t last_outside_band(const double* y, std::size_t n, double target, double tol) {
  for (std::size_t k = n; k-- > 0;) {
    if (std::fabs(y[k] - target) > tol) return static_cast<std::ptrdiff_t>(k);
  }
  return -1;
}

double max_value(const double* y, std::size_t n) {
  double best = y[0];
  for (std::size_t k = 1; k < n; ++k) best = std::max(best, y[k]);
  return best;
}

double min_value(const double* y, std::size_t n) {
  double best = y[0];
  for (std::size_t k = 1; k < n; ++k) best = std::min(best, y[k]);
  return best;
}

}  // namespace scalar
}  // namespace ipend::kernels
