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

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace ipend::kernels {

namespace {

// -1: no override, otherwise the Isa value.
std::atomic<int> g_override{-1};

Isa detect() {
  if (const char* force = std::getenv("IPEND_FORCE_SCALAR"); force != nullptr && *force != '\0' && *force != '0') {
    return Isa::scalar;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

Isa resolve(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument(std::string("kernel variant unavailable: ") + isa_name(isa));
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(IPEND_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  static const Isa detected = detect();
  return detected;
}

void set_isa_override(std::optional<Isa> isa) {
  if (isa) resolve(*isa);
  g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void fuzzy_infer_batch(const FuzzyTables& t, std::span<const double> input1, std::span<const double> input2,
                       std::span<double> out, Isa isa) {
  if (input1.size() != input2.size() || out.size() != input1.size()) {
    throw std::invalid_argument("fuzzy_infer_batch: span sizes differ");
  }
  switch (resolve(isa)) {
#if defined(IPEND_HAVE_AVX2)
    case Isa::avx2:
      avx2::fuzzy_infer_batch(t, input1.data(), input2.data(), out.data(), out.size());
      return;
#endif
    default:
      scalar::fuzzy_infer_batch(t, input1.data(), input2.data(), out.data(), out.size());
  }
}

std::ptrdiff_t last_outside_band(std::span<const double> y, double target, double tol, Isa isa) {
  switch (resolve(isa)) {
#if defined(IPEND_HAVE_AVX2)
    case Isa::avx2:
      return avx2::last_outside_band(y.data(), y.size(), target, tol);
#endif
    default:
      return scalar::last_outside_band(y.data(), y.size(), target, tol);
  }
}

double max_value(std::span<const double> y, Isa isa) {
  if (y.empty()) throw std::invalid_argument("max_value: empty span");
  switch (resolve(isa)) {
#if defined(IPEND_HAVE_AVX2)
    case Isa::avx2:
      return avx2::max_value(y.data(), y.size());
#endif
    default:
      return scalar::max_value(y.data(), y.size());
  }
}

double min_value(std::span<const double> y, Isa isa) {
  if (y.empty()) throw std::invalid_argument("min_value: empty span");
  switch (resolve(isa)) {
#if defined(IPEND_HAVE_AVX2)
    case Isa::avx2:
      return avx2::min_value(y.data(), y.size());
#endif
    default:
      return scalar::min_value(y.data(), y.size());
  }
}

}  // namespace ipend::kernels
