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

// Data-parallel inner loops with a scalar reference implementation and
// vector variants picked at runtime. Vector variants run the scalar
// operation sequence lane by lane (one lane per sample, identical operand
// order, no FMA), so their results are bitwise equal to the scalar path.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>

namespace ipend::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);
/// True when the variant is compiled in and the CPU supports it.
bool isa_available(Isa isa);
/// Best available variant, unless overridden by set_isa_override() or the
/// IPEND_FORCE_SCALAR environment variable.
Isa active_isa();
void set_isa_override(std::optional<Isa> isa);

/// Flat, precomputed form of a two-input 7x7 rule-grid fuzzy system.
/// Each membership function is the trapezoid
///   mu(x) = clamp(min((x - a) / wr, (d - x) / wf), 0, 1)
/// where wr / wf are the flank widths (1 for an open shoulder, whose a or d
/// is infinite). Dividing by the width makes the value at a corner exactly 1.
struct FuzzyTables {
  static constexpr std::size_t kTerms = 7;
  static constexpr std::size_t kRules = kTerms * kTerms;

  std::array<double, kTerms> a1{}, wr1{}, d1{}, wf1{};
  std::array<double, kTerms> a2{}, wr2{}, d2{}, wf2{};
  /// Output center of rule (i, j) at index i * 7 + j.
  std::array<double, kRules> rule_center{};
  double input1_scale = 1.0;
  double input2_scale = 1.0;
  double output_scale = 1.0;
};

inline double trapezoid_membership(double x, double a, double wr, double d, double wf) {
  const double rise = (x - a) / wr;
  const double fall = (d - x) / wf;
  return std::max(std::min(std::min(rise, fall), 1.0), 0.0);
}

/// Min-conjunction over all 49 rules followed by center-average
/// defuzzification. Scalar reference.
double fuzzy_infer_one(const FuzzyTables& t, double input1, double input2);

void fuzzy_infer_batch(const FuzzyTables& t, std::span<const double> input1, std::span<const double> input2,
                       std::span<double> out, Isa isa = active_isa());

/// Index of the last sample with |y - target| > tol, or -1.
std::ptrdiff_t last_outside_band(std::span<const double> y, double target, double tol, Isa isa = active_isa());

/// Largest element; the span must be non-empty.
double max_value(std::span<const double> y, Isa isa = active_isa());
double min_value(std::span<const double> y, Isa isa = active_isa());

}  // namespace ipend::kernels
