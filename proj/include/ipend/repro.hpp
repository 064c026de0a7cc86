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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ipend/metrics.hpp"
#include "ipend/scenario.hpp"

namespace ipend {

/// One published results table: hybrid, LQR, PID columns.
struct PublishedTable {
  const char* label;  // "Table IV"
  const char* title;
  Task task;
  Condition condition;
  SignalKind signal;
  std::array<double, 3> settling_s;
  std::array<double, 3> overshoot_pct;
  std::optional<std::array<double, 3>> sse;  // NaN marks an entry reported as not stable
};

const std::vector<PublishedTable>& published_tables();

/// Published settling-time ratios: hybrid as a percentage of another controller.
struct PublishedRatio {
  Task task;
  Condition condition;
  const char* other;  // "pid" or "lqr"
  double percent;
};

const std::vector<PublishedRatio>& published_ratios();

struct ReproOptions {
  std::optional<std::filesystem::path> output_dir;
  bool parallel = true;
};

/// Side-by-side published / this-run report over the built-in scenario set.
/// Diagnostic only; never fails on divergence.
std::string table_repro(const ReproOptions& options = {});

/// The LQR gain block of the repro report.
std::string lqr_gain_report();

}  // namespace ipend
