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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ipend {

using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using RowVec4 = Eigen::Matrix<double, 1, 4>;

/// Raised when a state, input or parameter set is not usable (non-finite,
/// non-positive mass, ...).
class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical constants of the cart-pendulum. Defaults are the reference rig:
/// M = 1.2 kg, m = 0.2 kg, l = 0.36 m, g = 9.8 m/s^2.
struct PlantParams {
  double cart_mass_kg = 1.2;
  double bob_mass_kg = 0.2;
  double pendulum_length_m = 0.36;
  double gravity_ms2 = 9.8;

  /// Throws InvalidState unless every field is finite and strictly positive.
  void validate() const;

  bool operator==(const PlantParams&) const = default;
};

/// Plant state [theta, theta_dot, x, x_dot]. theta = 0 is upright.
struct State {
  double theta_rad = 0.0;
  double theta_dot_rads = 0.0;
  double x_m = 0.0;
  double x_dot_ms = 0.0;

  static State from_vector(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
  Vec4 to_vector() const { return {theta_rad, theta_dot_rads, x_m, x_dot_ms}; }
  bool is_finite() const;

  bool operator==(const State&) const = default;
};

/// Linear model  x' = A x + B u,  y = C x + D u.
struct StateSpace {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
  Eigen::MatrixXd c;
  Eigen::MatrixXd d;
};

/// Rates [theta_dot, theta_ddot, x_dot, x_ddot] of the frictionless
/// cart-pendulum driven by a horizontal force on the cart.
///
/// The pendulum is a point mass at distance l from the pivot, and positive
/// theta tilts the pole towards -x, so a positive force accelerates both x
/// and theta. Both accelerations share the denominator
/// l (M + m) - m l cos^2(theta) >= l M > 0.
///
/// Throws InvalidState on non-finite state or force.
Vec4 nonlinear_derivative(const PlantParams& params, const State& state, double force_n);

/// Total mechanical energy (kinetic + potential, zero potential at the pivot
/// height). Conserved by the unforced dynamics.
double mechanical_energy(const PlantParams& params, const State& state);

/// Analytic Jacobian of nonlinear_derivative at the upright equilibrium.
/// C = I4, D = 0.
StateSpace linearize(const PlantParams& params);

/// Linearization following the printed sign convention (pendulum row and cart
/// row stiffness both negative), with the missing gravity factor restored.
/// Only used to compare LQR gains across conventions.
StateSpace linearize_printed_convention(const PlantParams& params);

struct Assessment {
  bool controllable = false;
  bool observable = false;
  bool stable = false;
  int controllability_rank = 0;
  int observability_rank = 0;
  std::vector<std::complex<double>> open_loop_poles;
};

/// Numerical rank with threshold max(rows, cols) * rel_eps * sigma_max.
int numerical_rank(const Eigen::MatrixXd& m, double rel_eps = 1e-12);

Eigen::MatrixXd controllability_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
Eigen::MatrixXd observability_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c);

/// Controllability, observability and open-loop stability of a linear model.
Assessment assess(const StateSpace& system);

}  // namespace ipend
