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

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ipend {

struct CareOptions {
  /// Pseudo-time step of the Riccati differential equation integration.
  double rde_step = 1e-3;
  /// The RDE phase stops once ||P_{k+1} - P_k||_F falls below this.
  double update_tol = 1e-9;
  /// The RDE phase also stops when the update has not shrunk by 10% within
  /// this many steps, which happens once it sits at the rounding floor.
  std::size_t stall_steps = 100'000;
  /// Required Frobenius norm of the algebraic residual.
  double residual_tol = 1e-8;
  std::size_t max_iter = 20'000'000;
  int max_newton = 10;
};

struct CareSolution {
  Eigen::MatrixXd p;
  double residual = 0.0;
  std::size_t rde_steps = 0;
  int newton_iterations = 0;
};

class CareNonConvergence : public std::runtime_error {
 public:
  CareNonConvergence(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

/// ||A'P + PA - P B R^-1 B' P + Q||_F
double care_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& q,
                     const Eigen::MatrixXd& r, const Eigen::MatrixXd& p);

/// PBH test on the closed right half-plane eigenvalues of A.
bool is_stabilizable(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double rel_eps = 1e-12);

/// Solves X' M + M X = -S for symmetric S through the vectorized
/// n^2 x n^2 linear system.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& m, const Eigen::MatrixXd& s);

/// Stabilizing solution of the continuous algebraic Riccati equation
///   A'P + PA - P B R^-1 B' P + Q = 0.
///
/// The Riccati differential equation dP/dtau = A'P + PA - PBR^-1B'P + Q is
/// integrated with RK4 from P = 0 until the per-step update is below
/// update_tol or stalls; Newton-Kleinman iterations, in correction form
/// P += X with (A - SP)'X + X(A - SP) = -res(P), then polish P until the
/// residual meets residual_tol.
///
/// Throws std::invalid_argument on bad shapes, R not positive definite or an
/// unstabilizable pair, and CareNonConvergence when the budget runs out.
CareSolution solve_care(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& q,
                        const Eigen::MatrixXd& r, const CareOptions& options = {});

}  // namespace ipend
