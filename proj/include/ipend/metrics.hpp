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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ipend/sim.hpp"

namespace ipend {

struct Metrics {
  /// nullopt when the signal never stays inside the band.
  std::optional<double> settling_time_s;
  double overshoot_pct = 0.0;
  double steady_state_error = 0.0;
  bool settled() const { return settling_time_s.has_value(); }
};

struct MetricsOptions {
  double band_fraction = 0.02;
  double tail_fraction = 0.1;

  bool operator==(const MetricsOptions&) const = default;
};

/// Earliest sample time after which |y - ref| <= band * |ref| holds for every
/// remaining sample (absolute band `band` when ref == 0).
std::optional<double> settling_time(std::span<const double> times_s, std::span<const double> signal,
                                    double reference_final, double band_fraction);

/// Step-type reference: max(0, (peak - ref) / |ref|) * 100, peak taken in the
/// direction of the reference. Zero reference: 100 * max|y| / |y(0)|, and 0
/// when y(0) == 0.
double overshoot_pct(std::span<const double> signal, double reference_final);

/// Mean of reference_final - y over the last tail_fraction of samples.
double steady_state_error(std::span<const double> signal, double reference_final, double tail_fraction);

Metrics compute_metrics(std::span<const double> times_s, std::span<const double> signal, double reference_final,
                        const MetricsOptions& options = {});

enum class SignalKind { cart_position, cart_velocity, pendulum_angle };

const char* signal_name(SignalKind kind);
std::vector<double> extract_signal(const Trajectory& traj, SignalKind kind);
/// Final value the signal is meant to reach: the last reference sample for
/// cart position, zero otherwise.
double signal_target(const Trajectory& traj, SignalKind kind);

struct LabeledTrajectory {
  std::string controller;
  const Trajectory* trajectory = nullptr;
};

struct MetricsRow {
  std::string controller;
  Metrics metrics;
};

struct ComparisonReport {
  std::string scenario;
  SignalKind signal = SignalKind::cart_position;
  std::vector<MetricsRow> rows;
  std::vector<std::string> ratio_lines;
};

/// "54%": a's settling time as a rounded percentage of b's.
std::string settling_ratio(double a_s, double b_s);

/// Metrics row per controller plus settling-time ratio lines of every
/// hybrid-labelled controller against each other settled controller.
ComparisonReport summarize(std::span<const LabeledTrajectory> runs, const std::string& scenario, SignalKind signal,
                           const MetricsOptions& options = {});

std::string render_text(std::span<const ComparisonReport> reports);
/// Header `controller,scenario,settling_s,overshoot_pct,sse`; the scenario
/// column is "<scenario>/<signal>".
std::string render_csv(std::span<const ComparisonReport> reports);

}  // namespace ipend
