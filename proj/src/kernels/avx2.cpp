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

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace ipend::kernels::avx2 {

namespace {

// std::min(a, b) == _mm256_min_pd(b, a) and std::max(a, b) ==
// _mm256_max_pd(b, a), including the choice of operand on ties.
inline __m256d membership(__m256d x, double a, double wr, double d, double wf) {
  const __m256d rise = _mm256_div_pd(_mm256_sub_pd(x, _mm256_set1_pd(a)), _mm256_set1_pd(wr));
  const __m256d fall = _mm256_div_pd(_mm256_sub_pd(_mm256_set1_pd(d), x), _mm256_set1_pd(wf));
  const __m256d lo = _mm256_min_pd(fall, rise);
  const __m256d capped = _mm256_min_pd(_mm256_set1_pd(1.0), lo);
  return _mm256_max_pd(_mm256_setzero_pd(), capped);
}

inline double hmax(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

inline double hmin(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
}

}  // namespace

void fuzzy_infer_batch(const FuzzyTables& t, const double* in1, const double* in2, double* out, std::size_t n) {
  constexpr std::size_t terms = FuzzyTables::kTerms;
  const __m256d s1 = _mm256_set1_pd(t.input1_scale);
  const __m256d s2 = _mm256_set1_pd(t.input2_scale);
  const __m256d so = _mm256_set1_pd(t.output_scale);

  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x1 = _mm256_mul_pd(_mm256_loadu_pd(in1 + k), s1);
    const __m256d x2 = _mm256_mul_pd(_mm256_loadu_pd(in2 + k), s2);
    __m256d m1[terms];
    __m256d m2[terms];
    for (std::size_t i = 0; i < terms; ++i) {
      m1[i] = membership(x1, t.a1[i], t.wr1[i], t.d1[i], t.wf1[i]);
      m2[i] = membership(x2, t.a2[i], t.wr2[i], t.d2[i], t.wf2[i]);
    }
    __m256d num = _mm256_setzero_pd();
    __m256d den = _mm256_setzero_pd();
    for (std::size_t i = 0; i < terms; ++i) {
      for (std::size_t j = 0; j < terms; ++j) {
        const __m256d mu = _mm256_min_pd(m2[j], m1[i]);
        num = _mm256_add_pd(num, _mm256_mul_pd(mu, _mm256_set1_pd(t.rule_center[i * terms + j])));
        den = _mm256_add_pd(den, mu);
      }
    }
    _mm256_storeu_pd(out + k, _mm256_mul_pd(_mm256_div_pd(num, den), so));
  }
  for (; k < n; ++k) out[k] = fuzzy_infer_one(t, in1[k], in2[k]);
}

std::ptrdiff_t last_outside_band(const double* y, std::size_t n, double target, double tol) {
  const std::size_t whole = n - n % 4;
  for (std::size_t k = n; k-- > whole;) {
    if (std::fabs(y[k] - target) > tol) return static_cast<std::ptrdiff_t>(k);
  }
  const __m256d vt = _mm256_set1_pd(target);
  const __m256d vtol = _mm256_set1_pd(tol);
  const __m256d sign = _mm256_set1_pd(-0.0);
  for (std::size_t k = whole; k >= 4; k -= 4) {
    const std::size_t base = k - 4;
    const __m256d dev = _mm256_andnot_pd(sign, _mm256_sub_pd(_mm256_loadu_pd(y + base), vt));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(dev, vtol, _CMP_GT_OQ));
    if (mask != 0) return static_cast<std::ptrdiff_t>(base) + (31 - __builtin_clz(static_cast<unsigned>(mask)));
  }
  return -1;
}

double max_value(const double* y, std::size_t n) {
  if (n < 4) {
    double best = y[0];
    for (std::size_t k = 1; k < n; ++k) best = std::max(best, y[k]);
    return best;
  }
  __m256d acc = _mm256_loadu_pd(y);
  std::size_t k = 4;
  for (; k + 4 <= n; k += 4) acc = _mm256_max_pd(_mm256_loadu_pd(y + k), acc);
  double best = hmax(acc);
  for (; k < n; ++k) best = std::max(best, y[k]);
  return best;
}

double min_value(const double* y, std::size_t n) {
  if (n < 4) {
    double best = y[0];
    for (std::size_t k = 1; k < n; ++k) best = std::min(best, y[k]);
    return best;
  }
  __m256d acc = _mm256_loadu_pd(y);
  std::size_t k = 4;
  for (; k + 4 <= n; k += 4) acc = _mm256_min_pd(_mm256_loadu_pd(y + k), acc);
  double best = hmin(acc);
  for (; k < n; ++k) best = std::min(best, y[k]);
  return best;
}

}  // namespace ipend::kernels::avx2
