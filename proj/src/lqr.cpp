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

#include "ipend/lqr.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ipend {

void LqrWeights::validate() const {
  if (!q.allFinite() || !std::isfinite(r)) throw std::invalid_argument("LQR weights must be finite");
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, q.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("LQR weight Q must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat4> es(q, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("LQR weight Q must be positive semi-definite");
  }
  if (!(r > 0.0)) throw std::invalid_argument("LQR weight r must be > 0");
}

LqrWeights reference_weights() {
  LqrWeights w;
  w.q.diagonal() << 1.0, 9.0, 230.0, 180.0;
  w.r = 1.5;
  return w;
}

LqrDesign lqr_synthesize(const StateSpace& system, const LqrWeights& weights, int tracked_output_index,
                         const CareOptions& options) {
  weights.validate();
  if (system.a.rows() != 4 || system.a.cols() != 4 || system.b.rows() != 4 || system.b.cols() != 1) {
    throw std::invalid_argument("lqr_synthesize: expected a 4-state single-input model");
  }
  if (tracked_output_index < 0 || tracked_output_index > 3) {
    throw std::invalid_argument(fmt::format("lqr_synthesize: tracked output index {} out of range", tracked_output_index));
  }

  const Eigen::MatrixXd r = Eigen::MatrixXd::Constant(1, 1, weights.r);
  const CareSolution care = solve_care(system.a, system.b, weights.q, r, options);

  LqrDesign design;
  design.p = care.p;
  design.care_residual = care.residual;
  const Mat4 a = system.a;
  const Vec4 b = system.b.col(0);
  design.controller.k_gain = (b.transpose() * design.p) / weights.r;
  design.controller.tracked_output_index = tracked_output_index;

  const Mat4 closed = a - b * design.controller.k_gain;
  Eigen::FullPivLU<Mat4> lu(closed);
  if (!lu.isInvertible()) throw SingularDcGain("lqr_synthesize: A - BK is singular");
  const Vec4 dc_gains = lu.solve(b);
  const double dc = dc_gains(tracked_output_index);
  if (!std::isfinite(dc) || std::abs(dc) <= 1e-12 * dc_gains.cwiseAbs().maxCoeff()) {
    throw SingularDcGain("lqr_synthesize: tracked output has zero DC gain");
  }
  design.controller.n_scale = -1.0 / dc;

  Eigen::EigenSolver<Mat4> es(closed, false);
  for (Eigen::Index i = 0; i < 4; ++i) design.closed_loop_poles.push_back(es.eigenvalues()(i));
  std::sort(design.closed_loop_poles.begin(), design.closed_loop_poles.end(),
            [](const auto& l, const auto& r) {
              return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
            });
  return design;
}

}  // namespace ipend
