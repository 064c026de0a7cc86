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

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ipend/controller.hpp"
#include "ipend/hybrid.hpp"
#include "ipend/lqr.hpp"
#include "ipend/metrics.hpp"
#include "ipend/pid.hpp"
#include "ipend/plant.hpp"
#include "ipend/sim.hpp"

namespace ipend {

/// Invalid or incomplete scenario configuration. The message names the key path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ControllerKind { pid_position, pid_simultaneous, lqr, hybrid, hybrid_simultaneous };
enum class Condition { nominal, disturbance, parameter_variation };
enum class Task { cart_position, simultaneous };

std::string_view to_string(ControllerKind kind);
std::string_view to_string(Condition condition);
std::string_view to_string(Task task);
std::string_view to_string(CartLoopTopology topology);

struct PlantVariation {
  double cart_mass_multiplier = 1.0;
  double bob_mass_multiplier = 1.0;
  double pendulum_length_multiplier = 1.0;

  bool operator==(const PlantVariation&) const = default;
};

struct Scenario {
  std::string name;
  ControllerKind controller = ControllerKind::lqr;
  Condition condition = Condition::nominal;
  Task task = Task::cart_position;
  CartLoopTopology cart_topology = CartLoopTopology::parallel;

  PlantParams plant;  // nominal; controllers are designed against this
  PlantVariation variation;
  SimConfig sim;
  MetricsOptions metrics;

  LqrWeights lqr_weights = reference_weights();
  int lqr_tracked_output = 2;

  PidGains pid_position = kTable2PositionGains;
  PidGains pid_velocity = kTable2VelocityGains;
  PidGains pid_angle = kSimultaneousAngleGains;
  PidGains pid_sim_position = kSimultaneousPositionGains;

  HybridChannelConfig hybrid_position;
  HybridChannelConfig hybrid_angle;

  /// Plant actually simulated: nominal parameters times the variation multipliers.
  PlantParams effective_plant() const;

  /// Signals reported for this task: x and x_dot for cart tasks, x and theta otherwise.
  std::vector<SignalKind> reported_signals() const;

  void validate() const;
  bool operator==(const Scenario&) const = default;
};

/// All defaults for a controller/task/condition triple, before any overrides.
Scenario default_scenario(ControllerKind controller, Task task, Condition condition);

/// Parses the sectioned key-value format. Unknown sections or keys are errors.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

/// Full representation; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

/// Three controllers across three conditions for both tasks.
std::vector<Scenario> builtin_scenarios();

std::unique_ptr<Controller> make_controller(const Scenario& scenario);

}  // namespace ipend
