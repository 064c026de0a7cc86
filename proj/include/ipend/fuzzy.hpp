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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ipend/kernels.hpp"

namespace ipend {

inline constexpr std::size_t kFuzzyTerms = 7;
inline constexpr std::array<std::string_view, kFuzzyTerms> kTermLabels{"NB", "NM", "NS", "Z", "PS", "PM", "PB"};

/// Index of a term label ("NB" .. "PB"), or -1.
int term_index(std::string_view label);

enum class MembershipKind { triangular, trapezoidal };

/// Triangular (a, b, c) or trapezoidal (a, b, c, d) membership function.
/// Trapezoids may have an open shoulder: a = b = -inf or c = d = +inf.
/// Finite flanks must have positive width.
class MembershipFunction {
 public:
  static MembershipFunction triangular(double a, double b, double c);
  static MembershipFunction trapezoidal(double a, double b, double c, double d);

  MembershipKind kind() const { return kind_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  /// Equivalent trapezoid (a, b, c, d) with b == c for triangles.
  std::array<double, 4> corners() const;
  /// Flank widths; 1 for an open shoulder.
  double rise_width() const;
  double fall_width() const;

  bool operator==(const MembershipFunction&) const = default;

 private:
  MembershipFunction(MembershipKind kind, std::vector<double> breakpoints);
  MembershipKind kind_;
  std::vector<double> breakpoints_;
};

/// Degree of membership in [0, 1]; 0 outside the support.
double fuzzify(const MembershipFunction& mf, double value);

/// Two-input, one-output Mamdani system on a full 7 x 7 rule grid with
/// singleton output centers (center-average defuzzification).
struct FuzzySystem {
  std::array<MembershipFunction, kFuzzyTerms> input1_terms;
  std::array<MembershipFunction, kFuzzyTerms> input2_terms;
  /// rule_table[i][j]: output term for input1 term i and input2 term j.
  std::array<std::array<int, kFuzzyTerms>, kFuzzyTerms> rule_table{};
  std::array<double, kFuzzyTerms> output_centers{};
  double input_scale1 = 1.0;
  double input_scale2 = 1.0;
  double output_scale = 1.0;

  /// Throws std::invalid_argument if a scale is not positive, a rule index
  /// is out of range, the terms leave part of the real line uncovered, or the
  /// rule table is not odd-symmetric.
  void validate() const;
  bool covers_real_line() const;
  bool is_odd_symmetric() const;

  kernels::FuzzyTables tables() const;

  bool operator==(const FuzzySystem&) const = default;
};

/// Seven terms on [-1, 1] with peaks at -1, -2/3, ..., 1; triangles inside,
/// open trapezoidal shoulders at NB and PB.
std::array<MembershipFunction, kFuzzyTerms> uniform_terms();

/// rule(i, j) = clamp(i + j - 3, 0, 6) (0-based term indices).
std::array<std::array<int, kFuzzyTerms>, kFuzzyTerms> diagonal_rule_table();

/// uniform_terms() on both inputs, diagonal_rule_table(), centers at the
/// input peaks, unit scales.
FuzzySystem default_fuzzy_system();

/// Compiled system; immutable and shareable.
class FuzzyEngine {
 public:
  explicit FuzzyEngine(const FuzzySystem& system);

  double infer(double input1, double input2) const { return kernels::fuzzy_infer_one(tables_, input1, input2); }
  void infer_batch(std::span<const double> input1, std::span<const double> input2, std::span<double> out,
                   kernels::Isa isa = kernels::active_isa()) const {
    kernels::fuzzy_infer_batch(tables_, input1, input2, out, isa);
  }
  const FuzzySystem& system() const { return system_; }
  const kernels::FuzzyTables& tables() const { return tables_; }

 private:
  FuzzySystem system_;
  kernels::FuzzyTables tables_;
};

/// Scaled inputs, min firing strength over 49 rules, center average, output
/// scaling.
double fuzzy_infer(const FuzzySystem& system, double input1, double input2);

}  // namespace ipend
