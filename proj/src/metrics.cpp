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

#include "ipend/metrics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "ipend/kernels.hpp"

namespace ipend {

std::optional<double> settling_time(std::span<const double> times_s, std::span<const double> signal,
                                    double reference_final, double band_fraction) {
  if (signal.empty() || times_s.size() != signal.size()) {
    throw std::invalid_argument("settling_time: need equal-length, non-empty series");
  }
  if (!(band_fraction > 0.0)) throw std::invalid_argument("settling_time: band must be > 0");
  const double tol = reference_final == 0.0 ? band_fraction : band_fraction * std::abs(reference_final);
  const std::ptrdiff_t last_out = kernels::last_outside_band(signal, reference_final, tol);
  if (last_out < 0) return times_s.front();
  const auto next = static_cast<std::size_t>(last_out) + 1;
  if (next >= signal.size()) return std::nullopt;
  return times_s[next];
}

double overshoot_pct(std::span<const double> signal, double reference_final) {
  if (signal.empty()) throw std::invalid_argument("overshoot_pct: empty series");
  if (reference_final == 0.0) {
    const double initial = std::abs(signal.front());
    if (initial == 0.0) return 0.0;
    const double peak = std::max(std::abs(kernels::max_value(signal)), std::abs(kernels::min_value(signal)));
    return 100.0 * peak / initial;
  }
  const double peak = reference_final > 0.0 ? kernels::max_value(signal) : kernels::min_value(signal);
  return std::max(0.0, (peak - reference_final) / reference_final) * 100.0;
}

double steady_state_error(std::span<const double> signal, double reference_final, double tail_fraction) {
  if (signal.empty()) throw std::invalid_argument("steady_state_error: empty series");
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0) {
    throw std::invalid_argument("steady_state_error: tail fraction must be in (0, 1]");
  }
  const auto n = signal.size();
  const auto tail = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n))));
  const auto begin = signal.end() - static_cast<std::ptrdiff_t>(std::min(tail, n));
  const double total = std::accumulate(begin, signal.end(), 0.0,
                                       [&](double acc, double y) { return acc + (reference_final - y); });
  return total / static_cast<double>(signal.end() - begin);
}

Metrics compute_metrics(std::span<const double> times_s, std::span<const double> signal, double reference_final,
                        const MetricsOptions& options) {
  Metrics m;
  m.settling_time_s = settling_time(times_s, signal, reference_final, options.band_fraction);
  m.overshoot_pct = overshoot_pct(signal, reference_final);
  m.steady_state_error = steady_state_error(signal, reference_final, options.tail_fraction);
  return m;
}

const char* signal_name(SignalKind kind) {
  switch (kind) {
    case SignalKind::cart_position:
      return "x";
    case SignalKind::cart_velocity:
      return "x_dot";
    case SignalKind::pendulum_angle:
      return "theta";
  }
  return "?";
}

std::vector<double> extract_signal(const Trajectory& traj, SignalKind kind) {
  switch (kind) {
    case SignalKind::cart_position:
      return traj.x();
    case SignalKind::cart_velocity:
      return traj.x_dot();
    case SignalKind::pendulum_angle:
      return traj.theta();
  }
  return {};
}

double signal_target(const Trajectory& traj, SignalKind kind) {
  if (kind == SignalKind::cart_position && !traj.references.empty()) return traj.references.back();
  return 0.0;
}

std::string settling_ratio(double a_s, double b_s) { return fmt::format("{:.0f}%", 100.0 * a_s / b_s); }

ComparisonReport summarize(std::span<const LabeledTrajectory> runs, const std::string& scenario, SignalKind signal,
                           const MetricsOptions& options) {
  ComparisonReport report;
  report.scenario = scenario;
  report.signal = signal;
  for (const auto& run : runs) {
    if (run.trajectory == nullptr || run.trajectory->size() == 0) continue;
    const auto values = extract_signal(*run.trajectory, signal);
    report.rows.push_back(
        {run.controller, compute_metrics(run.trajectory->times_s, values, signal_target(*run.trajectory, signal), options)});
  }
  for (const auto& h : report.rows) {
    if (h.controller.rfind("hybrid", 0) != 0 || !h.metrics.settled()) continue;
    for (const auto& other : report.rows) {
      if (&other == &h || other.controller.rfind("hybrid", 0) == 0 || !other.metrics.settled()) continue;
      if (*other.metrics.settling_time_s <= 0.0) continue;
      report.ratio_lines.push_back(fmt::format("{} settling time is {} of {}'s", h.controller,
                                               settling_ratio(*h.metrics.settling_time_s, *other.metrics.settling_time_s),
                                               other.controller));
    }
  }
  return report;
}

namespace {

std::string format_settling(const Metrics& m) {
  return m.settled() ? fmt::format("{:.4f}", *m.settling_time_s) : std::string("not-settled");
}

}  // namespace

std::string render_text(std::span<const ComparisonReport> reports) {
  std::string out;
  for (const auto& r : reports) {
    out += fmt::format("== {} ({}) ==\n", r.scenario, signal_name(r.signal));
    out += fmt::format("{:<22}{:>14}{:>16}{:>14}\n", "controller", "settling_s", "overshoot_pct", "sse");
    for (const auto& row : r.rows) {
      out += fmt::format("{:<22}{:>14}{:>16.4f}{:>14.6f}\n", row.controller, format_settling(row.metrics),
                         row.metrics.overshoot_pct, row.metrics.steady_state_error);
    }
    for (const auto& line : r.ratio_lines) out += "  " + line + "\n";
    out += "\n";
  }
  return out;
}

std::string render_csv(std::span<const ComparisonReport> reports) {
  std::string out = "controller,scenario,settling_s,overshoot_pct,sse\n";
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      out += fmt::format("{},{}/{},{},{:.6f},{:.6f}\n", row.controller, r.scenario, signal_name(r.signal),
                         format_settling(row.metrics), row.metrics.overshoot_pct, row.metrics.steady_state_error);
    }
  }
  return out;
}

}  // namespace ipend
