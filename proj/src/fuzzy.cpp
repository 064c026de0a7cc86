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

#include "ipend/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace ipend {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

int term_index(std::string_view label) {
  for (std::size_t i = 0; i < kTermLabels.size(); ++i) {
    if (kTermLabels[i] == label) return static_cast<int>(i);
  }
  return -1;
}

MembershipFunction::MembershipFunction(MembershipKind kind, std::vector<double> breakpoints)
    : kind_(kind), breakpoints_(std::move(breakpoints)) {
  for (double v : breakpoints_) {
    if (std::isnan(v)) throw std::invalid_argument("membership breakpoint is NaN");
  }
  if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end())) {
    throw std::invalid_argument("membership breakpoints must be nondecreasing");
  }
  const auto [a, b, c, d] = corners();
  const bool open_left = a == -kInf;
  const bool open_right = d == kInf;
  if (b == kInf || c == -kInf || (!open_left && !std::isfinite(b)) || (!open_right && !std::isfinite(c))) {
    throw std::invalid_argument("membership core may only be infinite on an open shoulder");
  }
  if ((!open_left && !(b > a)) || (!open_right && !(d > c))) {
    throw std::invalid_argument(
        fmt::format("membership flank must have positive width or be an open shoulder ({}, {}, {}, {})", a, b, c, d));
  }
  if (kind_ == MembershipKind::triangular && (open_left || open_right)) {
    throw std::invalid_argument("triangular membership must have finite breakpoints");
  }
}

MembershipFunction MembershipFunction::triangular(double a, double b, double c) {
  return MembershipFunction(MembershipKind::triangular, {a, b, c});
}

MembershipFunction MembershipFunction::trapezoidal(double a, double b, double c, double d) {
  return MembershipFunction(MembershipKind::trapezoidal, {a, b, c, d});
}

std::array<double, 4> MembershipFunction::corners() const {
  if (kind_ == MembershipKind::triangular) {
    if (breakpoints_.size() != 3) throw std::invalid_argument("triangular membership needs 3 breakpoints");
    return {breakpoints_[0], breakpoints_[1], breakpoints_[1], breakpoints_[2]};
  }
  if (breakpoints_.size() != 4) throw std::invalid_argument("trapezoidal membership needs 4 breakpoints");
  return {breakpoints_[0], breakpoints_[1], breakpoints_[2], breakpoints_[3]};
}

double MembershipFunction::rise_width() const {
  const auto c = corners();
  return c[0] == -kInf ? 1.0 : c[1] - c[0];
}

double MembershipFunction::fall_width() const {
  const auto c = corners();
  return c[3] == kInf ? 1.0 : c[3] - c[2];
}

double fuzzify(const MembershipFunction& mf, double value) {
  const auto c = mf.corners();
  return kernels::trapezoid_membership(value, c[0], mf.rise_width(), c[3], mf.fall_width());
}

bool FuzzySystem::covers_real_line() const {
  // Membership sums are piecewise linear between breakpoints and constant
  // beyond the outermost ones, so checking every finite breakpoint plus one
  // point past each end is exhaustive.
  auto covered = [](const std::array<MembershipFunction, kFuzzyTerms>& terms) {
    std::set<double> probes;
    for (const auto& mf : terms) {
      for (double v : mf.corners()) {
        if (std::isfinite(v)) probes.insert(v);
      }
    }
    if (probes.empty()) return false;
    const double span = std::max(1.0, *probes.rbegin() - *probes.begin());
    probes.insert(*probes.begin() - span);
    probes.insert(*probes.rbegin() + span);
    for (double x : probes) {
      double total = 0.0;
      for (const auto& mf : terms) total += fuzzify(mf, x);
      if (!(total > 0.0)) return false;
    }
    return true;
  };
  return covered(input1_terms) && covered(input2_terms);
}

bool FuzzySystem::is_odd_symmetric() const {
  const int last = static_cast<int>(kFuzzyTerms) - 1;
  for (int i = 0; i <= last; ++i) {
    for (int j = 0; j <= last; ++j) {
      const double sum = output_centers[rule_table[i][j]] + output_centers[rule_table[last - i][last - j]];
      if (std::abs(sum) > 1e-12) return false;
    }
  }
  return true;
}

void FuzzySystem::validate() const {
  for (double s : {input_scale1, input_scale2, output_scale}) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("fuzzy scales must be finite and > 0");
  }
  for (double z : output_centers) {
    if (!std::isfinite(z)) throw std::invalid_argument("fuzzy output centers must be finite");
  }
  for (const auto& row : rule_table) {
    for (int idx : row) {
      if (idx < 0 || idx >= static_cast<int>(kFuzzyTerms)) {
        throw std::invalid_argument(fmt::format("fuzzy rule output index {} out of range", idx));
      }
    }
  }
  if (!covers_real_line()) throw std::invalid_argument("fuzzy input terms leave part of the real line uncovered");
  if (!is_odd_symmetric()) throw std::invalid_argument("fuzzy rule table is not odd-symmetric");
}

kernels::FuzzyTables FuzzySystem::tables() const {
  validate();
  kernels::FuzzyTables t;
  for (std::size_t i = 0; i < kFuzzyTerms; ++i) {
    const auto c1 = input1_terms[i].corners();
    t.a1[i] = c1[0];
    t.d1[i] = c1[3];
    t.wr1[i] = input1_terms[i].rise_width();
    t.wf1[i] = input1_terms[i].fall_width();
    const auto c2 = input2_terms[i].corners();
    t.a2[i] = c2[0];
    t.d2[i] = c2[3];
    t.wr2[i] = input2_terms[i].rise_width();
    t.wf2[i] = input2_terms[i].fall_width();
    for (std::size_t j = 0; j < kFuzzyTerms; ++j) {
      t.rule_center[i * kFuzzyTerms + j] = output_centers[rule_table[i][j]];
    }
  }
  t.input1_scale = input_scale1;
  t.input2_scale = input_scale2;
  t.output_scale = output_scale;
  return t;
}

std::array<MembershipFunction, kFuzzyTerms> uniform_terms() {
  auto peak = [](int i) { return static_cast<double>(i - 3) / 3.0; };
  auto tri = [&](int i) { return MembershipFunction::triangular(peak(i - 1), peak(i), peak(i + 1)); };
  return {
      MembershipFunction::trapezoidal(-kInf, -kInf, peak(0), peak(1)),
      tri(1), tri(2), tri(3), tri(4), tri(5),
      MembershipFunction::trapezoidal(peak(5), peak(6), kInf, kInf),
  };
}

std::array<std::array<int, kFuzzyTerms>, kFuzzyTerms> diagonal_rule_table() {
  std::array<std::array<int, kFuzzyTerms>, kFuzzyTerms> table{};
  const int last = static_cast<int>(kFuzzyTerms) - 1;
  for (int i = 0; i <= last; ++i) {
    for (int j = 0; j <= last; ++j) table[i][j] = std::clamp(i + j - last / 2, 0, last);
  }
  return table;
}

FuzzySystem default_fuzzy_system() {
  FuzzySystem fs{uniform_terms(), uniform_terms(), diagonal_rule_table(), {}};
  for (std::size_t i = 0; i < kFuzzyTerms; ++i) fs.output_centers[i] = (static_cast<double>(i) - 3.0) / 3.0;
  return fs;
}

FuzzyEngine::FuzzyEngine(const FuzzySystem& system) : system_(system), tables_(system.tables()) {}

double fuzzy_infer(const FuzzySystem& system, double input1, double input2) {
  return kernels::fuzzy_infer_one(system.tables(), input1, input2);
}

}  // namespace ipend
