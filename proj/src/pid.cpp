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

#include "ipend/pid.hpp"

#include <cmath>
#include <stdexcept>

namespace ipend {

void PidGains::validate() const {
  if (!std::isfinite(kp) || !std::isfinite(ki) || !std::isfinite(kd)) {
    throw std::invalid_argument("PID gains must be finite");
  }
  if (!(derivative_filter_tau_s >= 0.0) || !std::isfinite(derivative_filter_tau_s)) {
    throw std::invalid_argument("PID derivative filter tau must be finite and >= 0");
  }
}

PidStepResult pid_step(const PidGains& gains, const PidState& state, double error, double dt_s) {
  if (!(dt_s > 0.0)) throw std::invalid_argument("pid_step: dt must be > 0");

  PidState next = state;
  const double previous = state.primed ? state.previous_error : error;

  next.integral_accumulator += 0.5 * (error + previous) * dt_s;

  const double raw_derivative = (error - previous) / dt_s;
  if (gains.derivative_filter_tau_s > 0.0) {
    const double alpha = dt_s / (gains.derivative_filter_tau_s + dt_s);
    next.filtered_derivative += alpha * (raw_derivative - next.filtered_derivative);
  } else {
    next.filtered_derivative = raw_derivative;
  }
  next.previous_error = error;
  next.primed = true;

  const double u =
      gains.kp * error + gains.ki * next.integral_accumulator + gains.kd * next.filtered_derivative;
  return {u, next};
}

PidPositionController::PidPositionController(PidGains position, PidGains velocity,
                                             CartLoopTopology topology)
    : position_(position), velocity_(velocity), topology_(topology) {
  position_.validate();
  velocity_.validate();
}

double PidPositionController::compute(double, double reference, const State& measured, double dt_s) {
  auto outer = pid_step(position_, position_state_, reference - measured.x_m, dt_s);
  position_state_ = outer.state;

  const double velocity_command = topology_ == CartLoopTopology::cascade ? outer.control : 0.0;
  auto inner = pid_step(velocity_, velocity_state_, velocity_command - measured.x_dot_ms, dt_s);
  velocity_state_ = inner.state;

  return topology_ == CartLoopTopology::cascade ? inner.control : outer.control + inner.control;
}

void PidPositionController::reset() {
  position_state_.reset();
  velocity_state_.reset();
}

std::unique_ptr<Controller> PidPositionController::clone() const {
  return std::make_unique<PidPositionController>(position_, velocity_, topology_);
}

PidSimultaneousController::PidSimultaneousController(PidGains angle, PidGains position)
    : angle_(angle), position_(position) {
  angle_.validate();
  position_.validate();
}

double PidSimultaneousController::compute(double, double reference, const State& measured, double dt_s) {
  auto angle = pid_step(angle_, angle_state_, 0.0 - measured.theta_rad, dt_s);
  angle_state_ = angle.state;
  auto position = pid_step(position_, position_state_, reference - measured.x_m, dt_s);
  position_state_ = position.state;
  return angle.control - position.control;
}

void PidSimultaneousController::reset() {
  angle_state_.reset();
  position_state_.reset();
}

std::unique_ptr<Controller> PidSimultaneousController::clone() const {
  return std::make_unique<PidSimultaneousController>(angle_, position_);
}

}  // namespace ipend
