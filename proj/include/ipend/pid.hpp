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
#include <string_view>

#include "ipend/controller.hpp"

namespace ipend {

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  /// First-order filter on the derivative term; 0 gives the raw backward
  /// difference.
  double derivative_filter_tau_s = 0.01;

  void validate() const;
  bool operator==(const PidGains&) const = default;
};

struct PidState {
  double integral_accumulator = 0.0;
  double previous_error = 0.0;
  double filtered_derivative = 0.0;
  /// False until the first sample; the first sample seeds previous_error.
  bool primed = false;

  void reset() { *this = PidState{}; }
  bool operator==(const PidState&) const = default;
};

struct PidStepResult {
  double control = 0.0;
  PidState state;
};

/// One sample of the discrete PID: trapezoidal integral, filtered backward
/// difference derivative. On the first sample after a reset the previous
/// error is taken equal to the current one (no derivative kick, a full
/// e * dt integral increment).
PidStepResult pid_step(const PidGains& gains, const PidState& state, double error, double dt_s);

/// Table II (cart position control).
inline constexpr PidGains kTable2PositionGains{0.6, 16.0, 10.0};
inline constexpr PidGains kTable2VelocityGains{10.0, 8.9, 0.009};
/// Table III (simultaneous control). These leave the upright equilibrium
/// unstable for either sign pairing; see kSimultaneous*Gains.
inline constexpr PidGains kTable3AngleGains{6.9, 0.009, 1.4};
inline constexpr PidGains kTable3PositionGains{1.0, 18.0, 1.0};
/// Stabilizing defaults for simultaneous control, same structure as Table III.
inline constexpr PidGains kSimultaneousAngleGains{69.0, 0.009, 14.0};
inline constexpr PidGains kSimultaneousPositionGains{10.0, 1.8, 10.0};

enum class CartLoopTopology {
  /// u = PID_pos(r - x) + PID_vel(0 - x_dot)
  parallel,
  /// u = PID_vel(PID_pos(r - x) - x_dot)
  cascade,
};

/// Cart-position PID. The pendulum angle is not measured.
class PidPositionController final : public Controller {
 public:
  PidPositionController(PidGains position, PidGains velocity,
                        CartLoopTopology topology = CartLoopTopology::parallel);

  double compute(double t_s, double reference, const State& measured, double dt_s) override;
  void reset() override;
  std::unique_ptr<Controller> clone() const override;
  std::string_view kind() const override { return "pid-position"; }

 private:
  PidGains position_;
  PidGains velocity_;
  CartLoopTopology topology_;
  PidState position_state_;
  PidState velocity_state_;
};

/// Two parallel loops: angle PID regulating theta to zero and position PID
/// tracking the cart reference, combined as u = u_angle - u_position.
class PidSimultaneousController final : public Controller {
 public:
  PidSimultaneousController(PidGains angle, PidGains position);

  double compute(double t_s, double reference, const State& measured, double dt_s) override;
  void reset() override;
  std::unique_ptr<Controller> clone() const override;
  std::string_view kind() const override { return "pid-simultaneous"; }

 private:
  PidGains angle_;
  PidGains position_;
  PidState angle_state_;
  PidState position_state_;
};

}  // namespace ipend
