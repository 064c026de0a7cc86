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

#include "ipend/repro.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "ipend/lqr.hpp"
#include "ipend/plant.hpp"
#include "ipend/runner.hpp"

namespace ipend {

namespace {

constexpr double kNotStable = std::numeric_limits<double>::quiet_NaN();
constexpr std::array<const char*, 3> kColumns{"hybrid", "lqr", "pid"};

std::string row_vec(const RowVec4& k) {
  return fmt::format("[{:.4f} {:.4f} {:.4f} {:.4f}]", k[0], k[1], k[2], k[3]);
}

std::string published_cell(double v, int precision) {
  return std::isnan(v) ? std::string("not stable") : fmt::format("{:.{}f}", v, precision);
}

const Metrics* find_row(const ComparisonReport& r, const char* controller) {
  for (const auto& row : r.rows) {
    if (row.controller == controller) return &row.metrics;
  }
  return nullptr;
}

}  // namespace

const std::vector<PublishedTable>& published_tables() {
  using enum Condition;
  using SignalKind::cart_velocity, SignalKind::pendulum_angle;
  constexpr Task cart_position = Task::cart_position, simultaneous = Task::simultaneous;
  static const std::vector<PublishedTable> tables{
      {"Table IV", "cart position control at no disturbance", cart_position, nominal, SignalKind::cart_position,
       {6.1772, 11.1301, 11.5323}, {0.6216, 3.2985, 18.0396}, std::array<double, 3>{0.0, 0.0319, 0.0}},
      {"Table V", "velocity response of the cart at no disturbance", cart_position, nominal, cart_velocity,
       {8.1685, 30.7334, 13.1383}, {0.3597, 22.7591, 7.4024}, std::nullopt},
      {"Table VI", "cart position control due to disturbance", cart_position, disturbance, SignalKind::cart_position,
       {6.1501, 12.6544, 11.4962}, {0.7667, 3.3125, 18.1397}, std::array<double, 3>{0.0, 0.0342, 0.0}},
      {"Table VII", "velocity response of the cart due to disturbance", cart_position, disturbance, cart_velocity,
       {12.3356, 35.2848, 12.9465}, {7.8724, 26.4599, 9.2150}, std::nullopt},
      {"Table VIII", "cart position control due to parameter variation", cart_position, parameter_variation,
       SignalKind::cart_position, {6.1687, 99.6906, 11.5230}, {0.6127, 8.4322, 18.1814},
       std::array<double, 3>{0.0, kNotStable, 0.0}},
      {"Table IX", "velocity response of the cart due to parameter variation", cart_position, parameter_variation,
       cart_velocity, {8.1870, 99.9885, 13.1070}, {0.4014, 39.4526, 7.5498}, std::nullopt},
      {"Table X", "cart position control at no disturbance", simultaneous, nominal, SignalKind::cart_position,
       {7.7567, 11.5004, 8.7765}, {3.1305, 3.2251, 29.8675}, std::array<double, 3>{0.0, 0.0094, 0.0}},
      {"Table XI", "pendulum angle control at no disturbance", simultaneous, nominal, pendulum_angle,
       {5.6920, 40.5025, 8.4096}, {2.1444, 15.9199, 2.1795}, std::nullopt},
      {"Table XII", "cart position control due to disturbance", simultaneous, disturbance, SignalKind::cart_position,
       {7.7322, 11.0007, 8.7669}, {3.1065, 3.2343, 29.8444}, std::array<double, 3>{0.0, 0.0097, 0.0}},
      {"Table XIII", "pendulum angle control due to disturbance", simultaneous, disturbance, pendulum_angle,
       {5.6787, 44.0003, 8.3552}, {2.1424, 15.8716, 2.1714}, std::nullopt},
      {"Table XIV", "cart position control due to parameter variation", simultaneous, parameter_variation,
       SignalKind::cart_position, {7.7143, 18.3265, 8.8201}, {3.1351, 3.8197, 30.8157},
       std::array<double, 3>{0.0, 0.0086, 0.0}},
      {"Table XV", "pendulum angle control due to parameter variation", simultaneous, parameter_variation,
       pendulum_angle, {5.8317, 85.2165, 8.4312}, {2.0910, 16.0875, 2.2572}, std::nullopt},
  };
  return tables;
}

const std::vector<PublishedRatio>& published_ratios() {
  static const std::vector<PublishedRatio> ratios{
      {Task::cart_position, Condition::nominal, "pid", 54.0},
      {Task::cart_position, Condition::nominal, "lqr", 56.0},
      {Task::cart_position, Condition::disturbance, "pid", 53.0},
      {Task::cart_position, Condition::disturbance, "lqr", 49.0},
      {Task::simultaneous, Condition::nominal, "lqr", 67.0},
      {Task::simultaneous, Condition::nominal, "pid", 83.0},
      {Task::simultaneous, Condition::disturbance, "lqr", 73.0},
      {Task::simultaneous, Condition::disturbance, "pid", 88.2},
  };
  return ratios;
}

std::string lqr_gain_report() {
  const PlantParams plant;
  const LqrWeights weights = reference_weights();
  std::string out = "LQR gain (Q = diag(1, 9, 230, 180), R = 1.5)\n";
  out += fmt::format("  published K             {}\n", row_vec(kPublishedLqrGain));
  const std::pair<const char*, StateSpace> candidates[] = {
      {"jacobian", linearize(plant)},
      {"printed-convention", linearize_printed_convention(plant)},
  };
  for (const auto& [name, system] : candidates) {
    const auto t0 = std::chrono::steady_clock::now();
    const LqrDesign d = lqr_synthesize(system, weights);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const RowVec4& k = d.controller.k_gain;
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      worst = std::max(worst, std::abs(k[i] - kPublishedLqrGain[i]) / std::abs(kPublishedLqrGain[i]));
    }
    out += fmt::format("  {:<22}  {}  N = {:.4f}  max rel. deviation {:.1f}%  {}  ({:.1f} ms)\n",
                       fmt::format("this run K ({})", name), row_vec(k), d.controller.n_scale, 100.0 * worst,
                       worst <= 0.02 ? "match" : "no match", ms);
  }
  return out;
}

std::string table_repro(const ReproOptions& options) {
  std::vector<ScenarioOutcome> outcomes;
  std::vector<ComparisonReport> reports;
  if (options.output_dir) {
    MatrixResult m = run_matrix(builtin_scenarios(), {*options.output_dir, std::nullopt, options.parallel});
    outcomes = std::move(m.outcomes);
    reports = std::move(m.reports);
  } else {
    const auto scenarios = builtin_scenarios();
    outcomes = run_scenarios(scenarios, options.parallel);
    reports = build_reports(outcomes);
  }

  std::map<std::string, const ComparisonReport*> by_key;
  for (const auto& r : reports) by_key[fmt::format("{}#{}", r.scenario, signal_name(r.signal))] = &r;
  auto lookup = [&](Task task, Condition condition, SignalKind signal) -> const ComparisonReport* {
    const auto it = by_key.find(fmt::format("{}/{}#{}", to_string(task), to_string(condition), signal_name(signal)));
    return it == by_key.end() ? nullptr : it->second;
  };

  std::string out = lqr_gain_report();
  out += "\nPublished value / this run. Settling band 2%, steady-state error over the final 10% of the run.\n";
  for (const auto& t : published_tables()) {
    const ComparisonReport* r = lookup(t.task, t.condition, t.signal);
    out += fmt::format("\n{}: {} ({}, {})\n", t.label, t.title, to_string(t.task), signal_name(t.signal));
    out += fmt::format("  {:<18}", "index");
    for (const char* c : kColumns) out += fmt::format("{:>26}", c);
    out += '\n';

    auto emit = [&](const char* index, const std::array<double, 3>& published, int precision, auto&& value) {
      out += fmt::format("  {:<18}", index);
      for (std::size_t i = 0; i < 3; ++i) {
        const Metrics* m = r ? find_row(*r, kColumns[i]) : nullptr;
        const std::string ours = m ? value(*m) : std::string("fault");
        out += fmt::format("{:>26}", fmt::format("{} / {}", published_cell(published[i], precision), ours));
      }
      out += '\n';
    };
    emit("settling_s", t.settling_s, 4, [](const Metrics& m) {
      return m.settled() ? fmt::format("{:.4f}", *m.settling_time_s) : std::string("not-settled");
    });
    emit("overshoot_pct", t.overshoot_pct, 4, [](const Metrics& m) { return fmt::format("{:.4f}", m.overshoot_pct); });
    if (t.sse) {
      emit("sse", *t.sse, 4, [](const Metrics& m) { return fmt::format("{:.4f}", m.steady_state_error); });
    }
  }

  out += "\nHybrid settling time as a share of the other controllers (cart position):\n";
  for (const auto& ratio : published_ratios()) {
    const ComparisonReport* r = lookup(ratio.task, ratio.condition, SignalKind::cart_position);
    const Metrics* h = r ? find_row(*r, "hybrid") : nullptr;
    const Metrics* o = r ? find_row(*r, ratio.other) : nullptr;
    std::string ours = "n/a";
    if (h && o && h->settled() && o->settled()) ours = settling_ratio(*h->settling_time_s, *o->settling_time_s);
    out += fmt::format("  {:<34} of {:<4} published {:>6}  this run {:>6}\n",
                       fmt::format("{}/{}", to_string(ratio.task), to_string(ratio.condition)), ratio.other,
                       fmt::format("{:g}%", ratio.percent), ours);
  }

  bool any_fault = false;
  for (const auto& o : outcomes) {
    if (o.fault) {
      any_fault = true;
      out += fmt::format("\nFAULT {} at step {}: {}", o.scenario.name, o.fault_step, *o.fault);
    }
    if (!o.clamp_events.empty()) {
      out += fmt::format("\nCLAMP {}: {} parameter clamp events", o.scenario.name, o.clamp_events.size());
    }
  }
  if (any_fault) out += '\n';
  return out;
}

}  // namespace ipend
