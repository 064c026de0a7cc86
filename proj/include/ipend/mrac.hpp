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

namespace ipend {

/// Unit-DC-gain second-order model  y'' + 2 zeta w y' + w^2 y = w^2 r,
/// advanced with one RK4 step per call.
class ReferenceModel {
 public:
  ReferenceModel(double natural_frequency_rads = 1.0, double damping_ratio = 0.9);

  /// Advances the model by dt with r held constant; returns y_m after the step.
  double step(double reference, double dt_s);
  double output() const { return y_; }
  double output_rate() const { return y_dot_; }
  void reset() { y_ = y_dot_ = 0.0; }

  double natural_frequency() const { return omega_; }
  double damping_ratio() const { return zeta_; }

 private:
  double omega_;
  double zeta_;
  double y_ = 0.0;
  double y_dot_ = 0.0;
};

struct AdaptiveParams {
  double theta1 = 1.0;
  double theta2 = 1.0;
  double theta3 = 1.0;
  double theta_prime = 1.0;
  double gamma_p = 0.01;
  double gamma_i = 0.01;
  double gamma_d = 0.01;
  double gamma_prime = 0.01;

  void validate() const;
  bool operator==(const AdaptiveParams&) const = default;
};

struct ParameterBox {
  double min = -100.0;
  double max = 100.0;
  bool operator==(const ParameterBox&) const = default;
};

struct MitUpdate {
  AdaptiveParams params;
  /// theta1, theta2, theta3, theta_prime hit the box this step.
  std::array<bool, 4> clamped{};
  bool any_clamped() const { return clamped[0] || clamped[1] || clamped[2] || clamped[3]; }
};

/// Euler step of the MIT rule with y_m as sensitivity proxy:
///   theta_k  -= gamma_k  * e_m * y_m  * dt   (k = 1, 2, 3)
///   theta'   -= gamma'   * e_m * y_mf * dt
/// where y_mf is y_m passed once more through the reference model. Results
/// are clamped into `box`.
MitUpdate mit_rule_update(const AdaptiveParams& params, double model_error, double y_m, double y_mf, double dt_s,
                          const ParameterBox& box = {});

/// lambda_k = theta_k r - theta' y
std::array<double, 3> lambda_signals(const AdaptiveParams& params, double reference, double plant_output);

}  // namespace ipend
