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

#include "ipend/plant.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ipend {

void PlantParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw InvalidState(fmt::format("plant parameter {} must be finite and > 0 (got {})", name, v));
    }
  };
  check(cart_mass_kg, "cart_mass_kg");
  check(bob_mass_kg, "bob_mass_kg");
  check(pendulum_length_m, "pendulum_length_m");
  check(gravity_ms2, "gravity_ms2");
}

bool State::is_finite() const {
  return std::isfinite(theta_rad) && std::isfinite(theta_dot_rads) && std::isfinite(x_m) &&
         std::isfinite(x_dot_ms);
}

Vec4 nonlinear_derivative(const PlantParams& p, const State& s, double force_n) {
  if (!s.is_finite() || !std::isfinite(force_n)) {
    throw InvalidState("nonlinear_derivative: non-finite state or force");
  }
  const double big_m = p.cart_mass_kg;
  const double m = p.bob_mass_kg;
  const double l = p.pendulum_length_m;
  const double g = p.gravity_ms2;

  const double sin_t = std::sin(s.theta_rad);
  const double cos_t = std::cos(s.theta_rad);
  const double w2 = s.theta_dot_rads * s.theta_dot_rads;

  // Force net of the centripetal reaction of the bob.
  const double drive = force_n - m * l * w2 * sin_t;

  const double x_ddot = (drive * l + m * g * l * sin_t * cos_t) / (l * (big_m + m) - m * l * cos_t * cos_t);
  const double theta_ddot = (m * l * cos_t * drive + m * g * l * sin_t * (big_m + m)) /
                            ((big_m + m) * m * l * l - (m * l) * (m * l) * cos_t * cos_t);

  return {s.theta_dot_rads, theta_ddot, s.x_dot_ms, x_ddot};
}

double mechanical_energy(const PlantParams& p, const State& s) {
  const double m = p.bob_mass_kg;
  const double l = p.pendulum_length_m;
  const double kinetic = 0.5 * (p.cart_mass_kg + m) * s.x_dot_ms * s.x_dot_ms -
                         m * l * s.x_dot_ms * s.theta_dot_rads * std::cos(s.theta_rad) +
                         0.5 * m * l * l * s.theta_dot_rads * s.theta_dot_rads;
  const double potential = m * p.gravity_ms2 * l * std::cos(s.theta_rad);
  return kinetic + potential;
}

namespace {

StateSpace make_pendulum_model(const PlantParams& p, double sign) {
  p.validate();
  const double big_m = p.cart_mass_kg;
  const double m = p.bob_mass_kg;
  const double l = p.pendulum_length_m;
  const double g = p.gravity_ms2;

  StateSpace ss;
  ss.a = Eigen::MatrixXd::Zero(4, 4);
  ss.a(0, 1) = 1.0;
  ss.a(1, 0) = sign * (big_m + m) * g / (big_m * l);
  ss.a(2, 3) = 1.0;
  ss.a(3, 0) = sign * m * g / big_m;
  ss.b = Eigen::MatrixXd::Zero(4, 1);
  ss.b(1, 0) = 1.0 / (big_m * l);
  ss.b(3, 0) = 1.0 / big_m;
  ss.c = Eigen::MatrixXd::Identity(4, 4);
  ss.d = Eigen::MatrixXd::Zero(4, 1);
  return ss;
}

}  // namespace

StateSpace linearize(const PlantParams& params) { return make_pendulum_model(params, +1.0); }

StateSpace linearize_printed_convention(const PlantParams& params) {
  return make_pendulum_model(params, -1.0);
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_eps) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  if (sigma_max == 0.0) return 0;
  const double threshold = static_cast<double>(std::max(m.rows(), m.cols())) * rel_eps * sigma_max;
  return static_cast<int>((sv.array() > threshold).count());
}

Eigen::MatrixXd controllability_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  Eigen::MatrixXd ctrb(n, n * m);
  Eigen::MatrixXd block = b;
  for (Eigen::Index k = 0; k < n; ++k) {
    ctrb.middleCols(k * m, m) = block;
    block = a * block;
  }
  return ctrb;
}

Eigen::MatrixXd observability_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
  const Eigen::Index n = a.rows();
  const Eigen::Index p = c.rows();
  Eigen::MatrixXd obsv(n * p, n);
  Eigen::MatrixXd block = c;
  for (Eigen::Index k = 0; k < n; ++k) {
    obsv.middleRows(k * p, p) = block;
    block = block * a;
  }
  return obsv;
}

Assessment assess(const StateSpace& system) {
  const Eigen::Index n = system.a.rows();
  if (system.a.cols() != n || system.b.rows() != n || system.c.cols() != n) {
    throw std::invalid_argument("assess: inconsistent state-space dimensions");
  }
  Assessment out;
  out.controllability_rank = numerical_rank(controllability_matrix(system.a, system.b));
  out.observability_rank = numerical_rank(observability_matrix(system.a, system.c));
  out.controllable = out.controllability_rank == n;
  out.observable = out.observability_rank == n;

  Eigen::EigenSolver<Eigen::MatrixXd> es(system.a, /*computeEigenvectors=*/false);
  const auto& ev = es.eigenvalues();
  out.stable = true;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    out.open_loop_poles.push_back(ev(i));
    if (ev(i).real() >= 0.0) out.stable = false;
  }
  std::sort(out.open_loop_poles.begin(), out.open_loop_poles.end(),
            [](const auto& l, const auto& r) {
              return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
            });
  return out;
}

}  // namespace ipend
