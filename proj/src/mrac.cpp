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

#include "ipend/mrac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ipend {

ReferenceModel::ReferenceModel(double natural_frequency_rads, double damping_ratio)
    : omega_(natural_frequency_rads), zeta_(damping_ratio) {
  if (!(omega_ > 0.0) || !std::isfinite(omega_)) {
    throw std::invalid_argument("reference model natural frequency must be > 0");
  }
  if (!(zeta_ > 0.0) || !std::isfinite(zeta_)) throw std::invalid_argument("reference model damping must be > 0");
}

double ReferenceModel::step(double reference, double dt_s) {
  if (!(dt_s > 0.0)) throw std::invalid_argument("ReferenceModel::step: dt must be > 0");
  const double w2 = omega_ * omega_;
  const double c = 2.0 * zeta_ * omega_;
  auto accel = [&](double y, double v) { return w2 * (reference - y) - c * v; };

  const double k1y = y_dot_;
  const double k1v = accel(y_, y_dot_);
  const double k2y = y_dot_ + 0.5 * dt_s * k1v;
  const double k2v = accel(y_ + 0.5 * dt_s * k1y, k2y);
  const double k3y = y_dot_ + 0.5 * dt_s * k2v;
  const double k3v = accel(y_ + 0.5 * dt_s * k2y, k3y);
  const double k4y = y_dot_ + dt_s * k3v;
  const double k4v = accel(y_ + dt_s * k3y, k4y);

  y_ += dt_s / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
  y_dot_ += dt_s / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  return y_;
}

void AdaptiveParams::validate() const {
  for (double g : {gamma_p, gamma_i, gamma_d, gamma_prime}) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw std::invalid_argument("adaptation rates must be finite and >= 0");
  }
  for (double t : {theta1, theta2, theta3, theta_prime}) {
    if (!std::isfinite(t)) throw std::invalid_argument("adaptive parameters must be finite");
  }
}

MitUpdate mit_rule_update(const AdaptiveParams& params, double model_error, double y_m, double y_mf, double dt_s,
                          const ParameterBox& box) {
  if (!(dt_s > 0.0)) throw std::invalid_argument("mit_rule_update: dt must be > 0");
  MitUpdate out{params, {}};
  const double drive = model_error * y_m;
  double* thetas[4] = {&out.params.theta1, &out.params.theta2, &out.params.theta3, &out.params.theta_prime};
  const double rates[4] = {params.gamma_p * drive, params.gamma_i * drive, params.gamma_d * drive,
                           params.gamma_prime * model_error * y_mf};
  for (int k = 0; k < 4; ++k) {
    const double next = *thetas[k] - rates[k] * dt_s;
    const double bounded = std::clamp(next, box.min, box.max);
    out.clamped[k] = bounded != next;
    *thetas[k] = bounded;
  }
  return out;
}

std::array<double, 3> lambda_signals(const AdaptiveParams& p, double reference, double plant_output) {
  const double feedback = p.theta_prime * plant_output;
  return {p.theta1 * reference - feedback, p.theta2 * reference - feedback, p.theta3 * reference - feedback};
}

}  // namespace ipend
