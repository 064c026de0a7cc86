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

#include "ipend/runner.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

#include <fmt/format.h>

#include "ipend/trajectory_io.hpp"
#include "util/file_io.hpp"

namespace ipend {

ScenarioOutcome run_scenario(const Scenario& scenario) {
  ScenarioOutcome out;
  out.scenario = scenario;
  std::unique_ptr<Controller> controller;
  try {
    controller = make_controller(scenario);
    out.trajectory = run_closed_loop(scenario.effective_plant(), *controller, scenario.sim);
  } catch (const SimulationFault& e) {
    out.fault = e.what();
    out.fault_step = e.step();
    out.trajectory = e.partial();
  } catch (const std::exception& e) {
    out.fault = e.what();
  }
  if (const auto* diag = dynamic_cast<const AdaptiveDiagnostics*>(controller.get())) {
    out.clamp_events = diag->clamp_events();
    out.peak_parameter_magnitude = diag->peak_parameter_magnitude();
  }
  return out;
}

std::vector<ScenarioOutcome> run_scenarios(std::span<const Scenario> scenarios, bool parallel) {
  std::vector<ScenarioOutcome> out;
  out.reserve(scenarios.size());
  if (!parallel) {
    for (const auto& s : scenarios) out.push_back(run_scenario(s));
    return out;
  }
  std::vector<std::future<ScenarioOutcome>> pending;
  pending.reserve(scenarios.size());
  for (const auto& s : scenarios) pending.push_back(std::async(std::launch::async, run_scenario, std::cref(s)));
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

std::string controller_label(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::hybrid:
    case ControllerKind::hybrid_simultaneous:
      return "hybrid";
    case ControllerKind::lqr:
      return "lqr";
    case ControllerKind::pid_position:
    case ControllerKind::pid_simultaneous:
      return "pid";
  }
  return "?";
}

std::vector<ComparisonReport> build_reports(std::span<const ScenarioOutcome> outcomes) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const ScenarioOutcome*>> groups;
  for (const auto& o : outcomes) {
    if (!o.ok()) continue;
    const std::string key = fmt::format("{}/{}", to_string(o.scenario.task), to_string(o.scenario.condition));
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&o);
  }

  std::vector<ComparisonReport> reports;
  for (const auto& key : order) {
    const auto& members = groups[key];
    std::map<std::string, int> label_count;
    for (const auto* o : members) ++label_count[controller_label(o->scenario.controller)];
    std::vector<LabeledTrajectory> runs;
    for (const auto* o : members) {
      std::string label = controller_label(o->scenario.controller);
      if (label_count[label] > 1) label = o->scenario.name;
      runs.push_back({label, &o->trajectory});
    }
    for (SignalKind signal : members.front()->scenario.reported_signals()) {
      reports.push_back(summarize(runs, key, signal, members.front()->scenario.metrics));
    }
  }
  return reports;
}

MatrixResult run_matrix(std::vector<Scenario> scenarios, const RunOptions& options) {
  MatrixResult result;
  std::set<std::string> names;
  for (auto& s : scenarios) {
    if (options.seed_override) s.sim.seed = *options.seed_override;
    std::string name = s.name;
    for (int k = 2; !names.insert(name).second; ++k) name = fmt::format("{}-{}", s.name, k);
    s.name = name;
  }

  result.outcomes = run_scenarios(scenarios, options.parallel);
  result.reports = build_reports(result.outcomes);

  std::string text = render_text(result.reports);
  for (const auto& o : result.outcomes) {
    if (o.fault) {
      result.errors.push_back(fmt::format("{}: simulation fault at step {}: {}", o.scenario.name, o.fault_step, *o.fault));
      text += fmt::format("FAULT {} at step {}: {}\n", o.scenario.name, o.fault_step, *o.fault);
    }
    constexpr std::size_t kMaxListed = 10;
    for (std::size_t i = 0; i < std::min(o.clamp_events.size(), kMaxListed); ++i) {
      const auto& c = o.clamp_events[i];
      text += fmt::format("CLAMP {} t={:.3f} channel={} parameter={}\n", o.scenario.name, c.t_s, c.channel,
                          c.parameter);
    }
    if (o.clamp_events.size() > kMaxListed) {
      text += fmt::format("CLAMP {} ... {} events in total\n", o.scenario.name, o.clamp_events.size());
    }
  }

  auto write = [&](const std::filesystem::path& path, const std::string& content) {
    if (auto err = util::write_file(path, content)) result.errors.push_back(*err);
  };
  std::error_code ec;
  std::filesystem::create_directories(options.output_dir, ec);
  if (ec) {
    result.errors.push_back(fmt::format("{}: {}", options.output_dir.string(), ec.message()));
  } else {
    for (const auto& o : result.outcomes) {
      write(options.output_dir / (o.scenario.name + ".csv"), trajectory_csv(o.trajectory));
    }
    write(options.output_dir / "report.txt", text);
    write(options.output_dir / "report.csv", render_csv(result.reports));
  }
  result.exit_code = result.errors.empty() ? 0 : 1;
  return result;
}

}  // namespace ipend
