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

#pragma once

#include "ipend/kernels.hpp"

namespace ipend::kernels {

namespace scalar {
void fuzzy_infer_batch(const FuzzyTables& t, const double* in1, const double* in2, double* out, std::size_t n);
std::ptrdiff_t last_outside_band(const double* y, std::size_t n, double target, double tol);
double max_value(const double* y, std::size_t n);
double min_value(const double* y, std::size_t n);
}  // namespace scalar

#if defined(IPEND_HAVE_AVX2)
namespace avx2 {
void fuzzy_infer_batch(const FuzzyTables& t, const double* in1, const double* in2, double* out, std::size_t n);
std::ptrdiff_t last_outside_band(const double* y, std::size_t n, double target, double tol);
double max_value(const double* y, std::size_t n);
double min_value(const double* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace ipend::kernels
