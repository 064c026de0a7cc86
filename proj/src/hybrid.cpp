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

#include "ipend/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ipend {

void HybridChannelConfig::validate() const {
  gains.validate();
  if (channel_gains) channel_gains->validate();
  fuzzy.validate();
  adaptation.validate();
  if (!(model_omega_rads > 0.0) || !(model_damping > 0.0)) {
    throw std::invalid_argument("hybrid reference model needs omega > 0 and damping > 0");
  }
  if (!(box.min < box.max)) throw std::invalid_argument("hybrid parameter box needs min < max");
  for (double t : {adaptation.theta1, adaptation.theta2, adaptation.theta3, adaptation.theta_prime}) {
    if (t < box.min || t > box.max) throw std::invalid_argument("hybrid initial parameters lie outside the box");
  }
}

HybridChannel::HybridChannel(HybridChannelConfig config, std::string name)
    : config_(std::move(config)),
      name_(std::move(name)),
      engine_((config_.validate(), config_.fuzzy)),
      model_(config_.model_omega_rads, config_.model_damping),
      model_filter_(config_.model_omega_rads, config_.model_damping),
      params_(config_.adaptation) {}

void HybridChannel::reset() {
  model_.reset();
  model_filter_.reset();
  params_ = config_.adaptation;
  integral_state_.reset();
  derivative_state_.reset();
  crisp_state_.reset();
  signals_ = {};
  clamp_events_.clear();
  peak_param_ = 0.0;
}

double HybridChannel::step(double t_s, double reference, double measured_output, double dt_s) {
  const PidGains& g = config_.gains;
  const PidGains& cg = config_.channel_gains ? *config_.channel_gains : g;
  HybridSignals s;

  s.y_m = model_.step(reference, dt_s);
  s.model_error = measured_output - s.y_m;
  const double y_mf = model_filter_.step(s.y_m, dt_s);
  const MitUpdate update = mit_rule_update(params_, s.model_error, s.y_m, y_mf, dt_s, config_.box);
  params_ = update.params;
  if (update.any_clamped()) {
    for (int k = 0; k < 4; ++k) {
      if (update.clamped[k]) clamp_events_.push_back({t_s, name_, k});
    }
  }
  peak_param_ = std::max({peak_param_, std::abs(params_.theta1), std::abs(params_.theta2),
                          std::abs(params_.theta3), std::abs(params_.theta_prime)});

  s.lambda = lambda_signals(params_, reference, measured_output);

  const PidGains integral_only{0.0, 1.0, 0.0, cg.derivative_filter_tau_s};
  const PidGains derivative_only{0.0, 0.0, 1.0, cg.derivative_filter_tau_s};
  auto integral = pid_step(integral_only, integral_state_, s.lambda[1], dt_s);
  integral_state_ = integral.state;
  auto derivative = pid_step(derivative_only, derivative_state_, s.lambda[2], dt_s);
  derivative_state_ = derivative.state;

  s.pi_channel = cg.kp * s.lambda[0] + cg.ki * integral.state.integral_accumulator;
  s.d_channel = cg.kd * derivative.state.filtered_derivative;
  s.u_fuzzy = engine_.infer(s.pi_channel, s.d_channel);

  auto crisp = pid_step(g, crisp_state_, reference - measured_output, dt_s);
  crisp_state_ = crisp.state;
  s.u_crisp = crisp.control;

  s.u_total = s.u_fuzzy + s.u_crisp;
  signals_ = s;
  return s.u_total;
}

HybridPositionController::HybridPositionController(HybridChannelConfig position, PidGains velocity)
    : position_(std::move(position), "position"), velocity_(velocity) {
  velocity_.validate();
}

double HybridPositionController::compute(double t_s, double reference, const State& measured, double dt_s) {
  const double u_position = position_.step(t_s, reference, measured.x_m, dt_s);
  auto damping = pid_step(velocity_, velocity_state_, 0.0 - measured.x_dot_ms, dt_s);
  velocity_state_ = damping.state;
  return u_position + damping.control;
}

void HybridPositionController::reset() {
  position_.reset();
  velocity_state_.reset();
}

std::unique_ptr<Controller> HybridPositionController::clone() const {
  return std::make_unique<HybridPositionController>(position_.config(), velocity_);
}

HybridSimultaneousController::HybridSimultaneousController(HybridChannelConfig angle, HybridChannelConfig position)
    : angle_(std::move(angle), "angle"), position_(std::move(position), "position") {}

double HybridSimultaneousController::compute(double t_s, double reference, const State& measured, double dt_s) {
  const double u_angle = angle_.step(t_s, 0.0, measured.theta_rad, dt_s);
  const double u_position = position_.step(t_s, reference, measured.x_m, dt_s);
  return u_angle - u_position;
}

void HybridSimultaneousController::reset() {
  angle_.reset();
  position_.reset();
}

std::unique_ptr<Controller> HybridSimultaneousController::clone() const {
  return std::make_unique<HybridSimultaneousController>(angle_.config(), position_.config());
}

std::vector<ClampEvent> HybridSimultaneousController::clamp_events() const {
  std::vector<ClampEvent> out = angle_.clamp_events();
  const auto& more = position_.clamp_events();
  out.insert(out.end(), more.begin(), more.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.t_s < r.t_s; });
  return out;
}

double HybridSimultaneousController::peak_parameter_magnitude() const {
  return std::max(angle_.peak_parameter_magnitude(), position_.peak_parameter_magnitude());
}

std::unique_ptr<Controller> hybrid_simultaneous_topology(const HybridChannelConfig& angle,
                                                         const HybridChannelConfig& position) {
  return std::make_unique<HybridSimultaneousController>(angle, position);
}

}  // namespace ipend
