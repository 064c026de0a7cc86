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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ipend/metrics.hpp"
#include "ipend/scenario.hpp"
#include "ipend/sim.hpp"

namespace ipend {

struct ScenarioOutcome {
  Scenario scenario;
  Trajectory trajectory;  // partial when faulted
  std::optional<std::string> fault;
  std::size_t fault_step = 0;
  std::vector<ClampEvent> clamp_events;
  double peak_parameter_magnitude = 0.0;

  bool ok() const { return !fault.has_value(); }
};

ScenarioOutcome run_scenario(const Scenario& scenario);

/// Runs independently; output order matches input order regardless of `parallel`.
std::vector<ScenarioOutcome> run_scenarios(std::span<const Scenario> scenarios, bool parallel = true);

/// Short controller label used in report rows: hybrid, lqr or pid.
std::string controller_label(ControllerKind kind);

/// Groups successful outcomes by task and condition, one report per reported signal.
std::vector<ComparisonReport> build_reports(std::span<const ScenarioOutcome> outcomes);

struct RunOptions {
  std::filesystem::path output_dir = "ipend-out";
  std::optional<std::uint64_t> seed_override;
  bool parallel = true;
};

struct MatrixResult {
  int exit_code = 0;
  std::vector<ScenarioOutcome> outcomes;
  std::vector<ComparisonReport> reports;
  std::vector<std::string> errors;
};

/// Simulates every scenario, writes <name>.csv per scenario plus report.txt
/// and report.csv. Exit code 1 if any run faulted or a file could not be
/// written, 0 otherwise.
MatrixResult run_matrix(std::vector<Scenario> scenarios, const RunOptions& options);

}  // namespace ipend
