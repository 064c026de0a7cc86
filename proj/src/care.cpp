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

#include "ipend/care.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include <fmt/format.h>

namespace ipend {

namespace {

using Eigen::MatrixXd;

MatrixXd riccati_rhs(const MatrixXd& a, const MatrixXd& s, const MatrixXd& q, const MatrixXd& p) {
  return a.transpose() * p + p * a - p * s * p + q;
}

void check_shapes(const MatrixXd& a, const MatrixXd& b, const MatrixXd& q, const MatrixXd& r) {
  const auto n = a.rows();
  if (a.cols() != n || b.rows() != n || q.rows() != n || q.cols() != n || r.rows() != b.cols() ||
      r.cols() != b.cols() || n == 0 || b.cols() == 0) {
    throw std::invalid_argument("solve_care: inconsistent matrix dimensions");
  }
  if (!a.allFinite() || !b.allFinite() || !q.allFinite() || !r.allFinite()) {
    throw std::invalid_argument("solve_care: non-finite input");
  }
  if ((q - q.transpose()).lpNorm<Eigen::Infinity>() > 1e-10 * std::max(1.0, q.lpNorm<Eigen::Infinity>())) {
    throw std::invalid_argument("solve_care: Q must be symmetric");
  }
}

}  // namespace

double care_residual(const MatrixXd& a, const MatrixXd& b, const MatrixXd& q, const MatrixXd& r,
                     const MatrixXd& p) {
  const MatrixXd s = b * r.llt().solve(b.transpose());
  return riccati_rhs(a, s, q, p).norm();
}

bool is_stabilizable(const MatrixXd& a, const MatrixXd& b, double rel_eps) {
  const auto n = a.rows();
  Eigen::EigenSolver<MatrixXd> es(a, false);
  const Eigen::MatrixXcd ac = a.cast<std::complex<double>>();
  const Eigen::MatrixXcd bc = b.cast<std::complex<double>>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto lambda = es.eigenvalues()(i);
    if (lambda.real() < 0.0) continue;
    Eigen::MatrixXcd pbh(n, n + b.cols());
    pbh << ac - lambda * Eigen::MatrixXcd::Identity(n, n), bc;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pbh);
    const auto& sv = svd.singularValues();
    const double threshold = static_cast<double>(pbh.cols()) * rel_eps * sv(0);
    if ((sv.array() > threshold).count() < n) return false;
  }
  return true;
}

MatrixXd solve_lyapunov(const MatrixXd& m, const MatrixXd& s) {
  const auto n = m.rows();
  const MatrixXd eye = MatrixXd::Identity(n, n);
  // Column-major vec: vec(M' X) = (I (x) M') vec X, vec(X M) = (M' (x) I) vec X.
  MatrixXd op = MatrixXd::Zero(n * n, n * n);
  const MatrixXd mt = m.transpose();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      op.block(i * n, j * n, n, n) += eye(i, j) * mt;
      op.block(i * n, j * n, n, n) += mt(i, j) * eye;
    }
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(s.data(), n * n);
  const Eigen::VectorXd x = op.fullPivLu().solve(rhs);
  MatrixXd out = Eigen::Map<const MatrixXd>(x.data(), n, n);
  return 0.5 * (out + out.transpose());
}

CareSolution solve_care(const MatrixXd& a, const MatrixXd& b, const MatrixXd& q, const MatrixXd& r,
                        const CareOptions& options) {
  check_shapes(a, b, q, r);
  if (!(options.rde_step > 0.0) || !(options.update_tol > 0.0) || !(options.residual_tol > 0.0) ||
      options.stall_steps == 0) {
    throw std::invalid_argument("solve_care: step, tolerances and stall window must be > 0");
  }
  Eigen::LLT<MatrixXd> r_chol(r);
  if (r_chol.info() != Eigen::Success) throw std::invalid_argument("solve_care: R must be positive definite");
  if (!is_stabilizable(a, b)) throw std::invalid_argument("solve_care: (A, B) is not stabilizable");

  const auto n = a.rows();
  const MatrixXd s = b * r_chol.solve(b.transpose());
  const double h = options.rde_step;

  CareSolution sol;
  MatrixXd p = MatrixXd::Zero(n, n);
  double update = std::numeric_limits<double>::infinity();
  double best_update = update;
  std::size_t best_step = 0;
  while (update >= options.update_tol && sol.rde_steps - best_step < options.stall_steps) {
    if (sol.rde_steps >= options.max_iter) {
      throw CareNonConvergence(
          fmt::format("solve_care: RDE did not settle in {} steps (last update {:g})", sol.rde_steps, update),
          riccati_rhs(a, s, q, p).norm());
    }
    const MatrixXd k1 = riccati_rhs(a, s, q, p);
    const MatrixXd k2 = riccati_rhs(a, s, q, p + 0.5 * h * k1);
    const MatrixXd k3 = riccati_rhs(a, s, q, p + 0.5 * h * k2);
    const MatrixXd k4 = riccati_rhs(a, s, q, p + h * k3);
    MatrixXd next = p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    next = 0.5 * (next + next.transpose());
    if (!next.allFinite()) {
      throw CareNonConvergence("solve_care: RDE integration diverged", std::numeric_limits<double>::infinity());
    }
    update = (next - p).norm();
    p = std::move(next);
    ++sol.rde_steps;
    if (update < 0.9 * best_update) {
      best_update = update;
      best_step = sol.rde_steps;
    }
  }

  double residual = riccati_rhs(a, s, q, p).norm();
  while (residual > options.residual_tol && sol.newton_iterations < options.max_newton) {
    const MatrixXd closed = a - s * p;
    const MatrixXd candidate = p + solve_lyapunov(closed, riccati_rhs(a, s, q, p));
    ++sol.newton_iterations;
    const double candidate_residual = riccati_rhs(a, s, q, candidate).norm();
    if (!candidate.allFinite() || !(candidate_residual < residual)) break;
    p = candidate;
    residual = candidate_residual;
  }

  if (residual > options.residual_tol) {
    throw CareNonConvergence(
        fmt::format("solve_care: residual {:g} above tolerance {:g}", residual, options.residual_tol), residual);
  }
  sol.p = std::move(p);
  sol.residual = residual;
  return sol;
}

}  // namespace ipend
