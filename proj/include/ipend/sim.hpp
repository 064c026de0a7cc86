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

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipend/controller.hpp"
#include "ipend/plant.hpp"

namespace ipend {

/// Raised by rk4_step when a stage evaluation or the result is non-finite.
class NonFiniteStep : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Classical fourth-order Runge-Kutta step with the input held constant over
/// the step. `f(y, u)` returns dy/dt.
template <class Derivative, class Vec>
Vec rk4_step(Derivative&& f, const Vec& y, double input, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be > 0");
  auto finite = [](const Vec& v) { return v.allFinite(); };
  const Vec k1 = f(y, input);
  if (!finite(k1)) throw NonFiniteStep("rk4_step: non-finite stage 1");
  const Vec k2 = f(Vec(y + 0.5 * dt * k1), input);
  if (!finite(k2)) throw NonFiniteStep("rk4_step: non-finite stage 2");
  const Vec k3 = f(Vec(y + 0.5 * dt * k2), input);
  if (!finite(k3)) throw NonFiniteStep("rk4_step: non-finite stage 3");
  const Vec k4 = f(Vec(y + dt * k3), input);
  if (!finite(k4)) throw NonFiniteStep("rk4_step: non-finite stage 4");
  Vec out = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!finite(out)) throw NonFiniteStep("rk4_step: non-finite result");
  return out;
}

struct StepReference {
  double amplitude = 0.0;
  double start_s = 0.0;

  double at(double t_s) const { return t_s >= start_s ? amplitude : 0.0; }
  bool operator==(const StepReference&) const = default;
};

enum class DisturbanceKind { none, uniform_noise };

struct DisturbanceSpec {
  DisturbanceKind kind = DisturbanceKind::none;
  double amplitude_n = 0.5;
  double start_s = 0.0;
  double end_s = std::numeric_limits<double>::infinity();

  void validate() const;
  bool operator==(const DisturbanceSpec&) const = default;
};

/// Deterministic uniform source. The raw sequence is std::mt19937_64 (fully
/// specified by the standard) and the conversion to [0, 1) is done here, so
/// a seed yields the same samples on every conforming platform.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Force disturbance at time t: zero outside [start_s, end_s] (and for kind
/// none); uniform in [-amplitude, amplitude) inside. Draws from `rng` only
/// when active.
double disturbance_sample(const DisturbanceSpec& spec, double t_s, NoiseSource& rng);

struct SimConfig {
  double dt_s = 1e-3;
  double duration_s = 40.0;
  StepReference reference;
  DisturbanceSpec disturbance;
  std::uint64_t seed = 0;
  /// Symmetric actuator limit; nullopt disables saturation.
  std::optional<double> actuator_limit_n;
  State initial_state;

  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;
  /// duration_s / dt_s rounded; validate() guarantees this is exact to 1e-9.
  std::size_t step_count() const;

  bool operator==(const SimConfig&) const = default;
};

/// Time-stamped closed-loop log. Row k holds the state at times_s[k], the
/// force applied over [t_k, t_k + dt) and the reference sampled at t_k.
struct Trajectory {
  std::vector<double> times_s;
  std::vector<State> states;
  std::vector<double> inputs_n;
  std::vector<double> references;

  std::size_t size() const { return times_s.size(); }
  void reserve(std::size_t n);
  std::vector<double> theta() const;
  std::vector<double> x() const;
  std::vector<double> x_dot() const;
};

/// A run that produced a non-finite state. Carries the log up to the fault.
class SimulationFault : public std::runtime_error {
 public:
  SimulationFault(const std::string& what, std::size_t step, Trajectory partial)
      : std::runtime_error(what), step_(step), partial_(std::move(partial)) {}
  std::size_t step() const { return step_; }
  const Trajectory& partial() const { return partial_; }

 private:
  std::size_t step_;
  Trajectory partial_;
};

using PlantDerivative = std::function<Vec4(const Vec4& state, double force_n)>;

/// Nonlinear plant as a derivative function.
PlantDerivative nonlinear_plant(const PlantParams& params);
/// Linear model x' = A x + B u as a derivative function.
PlantDerivative linear_plant(const StateSpace& system);

/// Simulates the loop: sample reference, query controller, add disturbance,
/// saturate, advance one RK4 step. The controller is reset first.
Trajectory run_closed_loop(const PlantParams& params, Controller& controller, const SimConfig& config);
Trajectory run_closed_loop(const PlantDerivative& plant, Controller& controller, const SimConfig& config);

}  // namespace ipend
