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
#include <memory>
#include <vector>

#include "ipend/care.hpp"
#include "ipend/controller.hpp"
#include "ipend/plant.hpp"

namespace ipend {

struct LqrWeights {
  Mat4 q = Mat4::Zero();
  double r = 1.0;

  /// Throws std::invalid_argument unless Q is symmetric PSD (eigenvalues
  /// >= -1e-10) and r > 0.
  void validate() const;
  bool operator==(const LqrWeights&) const = default;
};

/// Q = diag(1, 9, 230, 180), R = 1.5.
LqrWeights reference_weights();

/// Published gain for reference_weights() on the default plant.
inline const RowVec4 kPublishedLqrGain{2.0960, -1.2221, 12.3828, 12.7813};

struct LqrController {
  RowVec4 k_gain = RowVec4::Zero();
  double n_scale = 0.0;
  int tracked_output_index = 2;
};

struct LqrDesign {
  LqrController controller;
  Mat4 p = Mat4::Zero();
  double care_residual = 0.0;
  std::vector<std::complex<double>> closed_loop_poles;
};

class SingularDcGain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// K = R^-1 B' P from the CARE solution, and N chosen so the DC gain from
/// reference to state `tracked_output_index` is one:
///   N = -1 / (e_i' (A - BK)^-1 B).
LqrDesign lqr_synthesize(const StateSpace& system, const LqrWeights& weights, int tracked_output_index = 2,
                         const CareOptions& options = {});

/// u = N r - K x
inline double lqr_control(const LqrController& ctrl, double reference, const State& state) {
  return ctrl.n_scale * reference - ctrl.k_gain.dot(state.to_vector().transpose());
}

/// Full-state feedback wrapper around lqr_control.
class LqrStateFeedback final : public Controller {
 public:
  explicit LqrStateFeedback(LqrController ctrl) : ctrl_(ctrl) {}

  double compute(double, double reference, const State& measured, double) override {
    return lqr_control(ctrl_, reference, measured);
  }
  void reset() override {}
  std::unique_ptr<Controller> clone() const override { return std::make_unique<LqrStateFeedback>(ctrl_); }
  std::string_view kind() const override { return "lqr"; }

  const LqrController& gains() const { return ctrl_; }

 private:
  LqrController ctrl_;
};

}  // namespace ipend
