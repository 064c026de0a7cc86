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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ipend/controller.hpp"
#include "ipend/fuzzy.hpp"
#include "ipend/mrac.hpp"
#include "ipend/pid.hpp"

namespace ipend {

/// Configuration of one hybrid adaptive-fuzzy loop.
struct HybridChannelConfig {
  /// Crisp PID gains on r - y.
  PidGains gains;
  /// Kp / Ki / Kd weighting the adaptive channel signals; the crisp gains when unset.
  std::optional<PidGains> channel_gains;
  FuzzySystem fuzzy = default_fuzzy_system();
  double model_omega_rads = 1.0;
  double model_damping = 0.9;
  AdaptiveParams adaptation;
  ParameterBox box;

  void validate() const;
  bool operator==(const HybridChannelConfig&) const = default;
};

/// Intermediate signals of the most recent step.
struct HybridSignals {
  double y_m = 0.0;
  double model_error = 0.0;
  std::array<double, 3> lambda{};
  double pi_channel = 0.0;
  double d_channel = 0.0;
  double u_fuzzy = 0.0;
  double u_crisp = 0.0;
  double u_total = 0.0;
};

struct ClampEvent {
  double t_s = 0.0;
  std::string channel;
  /// 0..2 for theta1..theta3, 3 for theta'.
  int parameter = 0;
};

/// One hybrid loop:
///  1. advance the reference model, form e_m = y - y_m, apply the MIT rule;
///  2. lambda_k = theta_k r - theta' y;
///  3. PI channel = Kp lambda1 + Ki integral(lambda2), D channel = Kd dlambda3/dt;
///  4. u_fuzzy = fuzzy(PI channel, D channel);
///  5. u = u_fuzzy + PID(r - y).
class HybridChannel {
 public:
  HybridChannel(HybridChannelConfig config, std::string name);

  double step(double t_s, double reference, double measured_output, double dt_s);
  void reset();

  const HybridSignals& signals() const { return signals_; }
  const AdaptiveParams& params() const { return params_; }
  const HybridChannelConfig& config() const { return config_; }
  const std::vector<ClampEvent>& clamp_events() const { return clamp_events_; }
  /// Largest |theta| seen since reset.
  double peak_parameter_magnitude() const { return peak_param_; }

 private:
  HybridChannelConfig config_;
  std::string name_;
  FuzzyEngine engine_;
  ReferenceModel model_;
  ReferenceModel model_filter_;
  AdaptiveParams params_;
  PidState integral_state_;    // fed lambda2
  PidState derivative_state_;  // fed lambda3
  PidState crisp_state_;
  HybridSignals signals_;
  std::vector<ClampEvent> clamp_events_;
  double peak_param_ = 0.0;
};

/// Exposed by controllers that run MIT-rule adaptation.
class AdaptiveDiagnostics {
 public:
  virtual ~AdaptiveDiagnostics() = default;
  virtual std::vector<ClampEvent> clamp_events() const = 0;
  virtual double peak_parameter_magnitude() const = 0;
};

/// Cart-position hybrid: the position PID of the parallel cart topology is
/// replaced by a hybrid loop on x; the velocity damping loop is kept.
///   u = H(r, x) + PID_vel(0 - x_dot)
class HybridPositionController final : public Controller, public AdaptiveDiagnostics {
 public:
  HybridPositionController(HybridChannelConfig position, PidGains velocity);

  double compute(double t_s, double reference, const State& measured, double dt_s) override;
  void reset() override;
  std::unique_ptr<Controller> clone() const override;
  std::string_view kind() const override { return "hybrid"; }

  std::vector<ClampEvent> clamp_events() const override { return position_.clamp_events(); }
  double peak_parameter_magnitude() const override { return position_.peak_parameter_magnitude(); }
  const HybridChannel& position_channel() const { return position_; }

 private:
  HybridChannel position_;
  PidGains velocity_;
  PidState velocity_state_;
};

/// Angle and position hybrid loops combined like the simultaneous PID:
///   u = H_angle(0, theta) - H_position(r, x)
class HybridSimultaneousController final : public Controller, public AdaptiveDiagnostics {
 public:
  HybridSimultaneousController(HybridChannelConfig angle, HybridChannelConfig position);

  double compute(double t_s, double reference, const State& measured, double dt_s) override;
  void reset() override;
  std::unique_ptr<Controller> clone() const override;
  std::string_view kind() const override { return "hybrid-simultaneous"; }

  std::vector<ClampEvent> clamp_events() const override;
  double peak_parameter_magnitude() const override;
  const HybridChannel& angle_channel() const { return angle_; }
  const HybridChannel& position_channel() const { return position_; }

 private:
  HybridChannel angle_;
  HybridChannel position_;
};

/// Same as constructing HybridSimultaneousController directly.
std::unique_ptr<Controller> hybrid_simultaneous_topology(const HybridChannelConfig& angle,
                                                         const HybridChannelConfig& position);

}  // namespace ipend
