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

#include "ipend/sim.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ipend {

void DisturbanceSpec::validate() const {
  if (!(amplitude_n >= 0.0) || !std::isfinite(amplitude_n)) {
    throw std::invalid_argument("disturbance amplitude_n must be finite and >= 0");
  }
  if (std::isnan(start_s) || std::isnan(end_s) || start_s > end_s) {
    throw std::invalid_argument("disturbance window requires start_s <= end_s");
  }
}

double disturbance_sample(const DisturbanceSpec& spec, double t_s, NoiseSource& rng) {
  if (spec.kind == DisturbanceKind::none) return 0.0;
  if (t_s < spec.start_s || t_s > spec.end_s) return 0.0;
  const double u = rng.next_unit();
  return spec.amplitude_n * (2.0 * u - 1.0);
}

void SimConfig::validate() const {
  if (!(dt_s > 0.0) || !std::isfinite(dt_s)) throw std::invalid_argument("sim dt_s must be > 0");
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    throw std::invalid_argument("sim duration_s must be > 0");
  }
  if (dt_s > duration_s) throw std::invalid_argument("sim dt_s must not exceed duration_s");
  const double ratio = duration_s / dt_s;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw std::invalid_argument(
        fmt::format("sim duration_s / dt_s = {} is not an integer step count", ratio));
  }
  if (!std::isfinite(reference.amplitude) || !std::isfinite(reference.start_s)) {
    throw std::invalid_argument("sim reference must be finite");
  }
  if (actuator_limit_n && !(*actuator_limit_n > 0.0)) {
    throw std::invalid_argument("sim actuator_limit_n must be > 0 when set");
  }
  if (!initial_state.is_finite()) throw std::invalid_argument("sim initial state must be finite");
  disturbance.validate();
}

std::size_t SimConfig::step_count() const {
  return static_cast<std::size_t>(std::llround(duration_s / dt_s));
}

void Trajectory::reserve(std::size_t n) {
  times_s.reserve(n);
  states.reserve(n);
  inputs_n.reserve(n);
  references.reserve(n);
}

std::vector<double> Trajectory::theta() const {
  std::vector<double> out(states.size());
  std::transform(states.begin(), states.end(), out.begin(), [](const State& s) { return s.theta_rad; });
  return out;
}

std::vector<double> Trajectory::x() const {
  std::vector<double> out(states.size());
  std::transform(states.begin(), states.end(), out.begin(), [](const State& s) { return s.x_m; });
  return out;
}

std::vector<double> Trajectory::x_dot() const {
  std::vector<double> out(states.size());
  std::transform(states.begin(), states.end(), out.begin(), [](const State& s) { return s.x_dot_ms; });
  return out;
}

PlantDerivative nonlinear_plant(const PlantParams& params) {
  params.validate();
  return [params](const Vec4& y, double u) -> Vec4 {
    const State s = State::from_vector(y);
    if (!s.is_finite() || !std::isfinite(u)) {
      return Vec4::Constant(std::numeric_limits<double>::quiet_NaN());
    }
    return nonlinear_derivative(params, s, u);
  };
}

PlantDerivative linear_plant(const StateSpace& system) {
  if (system.a.rows() != 4 || system.a.cols() != 4 || system.b.rows() != 4 || system.b.cols() != 1) {
    throw std::invalid_argument("linear_plant: expected a 4-state single-input model");
  }
  const Mat4 a = system.a;
  const Vec4 b = system.b.col(0);
  return [a, b](const Vec4& y, double u) -> Vec4 { return a * y + b * u; };
}

Trajectory run_closed_loop(const PlantParams& params, Controller& controller, const SimConfig& config) {
  return run_closed_loop(nonlinear_plant(params), controller, config);
}

Trajectory run_closed_loop(const PlantDerivative& plant, Controller& controller, const SimConfig& config) {
  config.validate();
  controller.reset();

  const std::size_t steps = config.step_count();
  NoiseSource noise(config.seed);
  Trajectory log;
  log.reserve(steps + 1);

  Vec4 y = config.initial_state.to_vector();
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * config.dt_s;
    const State measured = State::from_vector(y);
    const double r = config.reference.at(t);

    double u = controller.compute(t, r, measured, config.dt_s);
    u += disturbance_sample(config.disturbance, t, noise);
    if (config.actuator_limit_n) u = std::clamp(u, -*config.actuator_limit_n, *config.actuator_limit_n);

    if (!std::isfinite(u)) {
      throw SimulationFault(fmt::format("non-finite control at step {} (t = {} s)", k, t), k, std::move(log));
    }
    log.times_s.push_back(t);
    log.states.push_back(measured);
    log.inputs_n.push_back(u);
    log.references.push_back(r);

    if (k == steps) break;
    try {
      y = rk4_step(plant, y, u, config.dt_s);
    } catch (const NonFiniteStep& e) {
      throw SimulationFault(fmt::format("{} at step {} (t = {} s)", e.what(), k, t), k, std::move(log));
    }
  }
  return log;
}

}  // namespace ipend
