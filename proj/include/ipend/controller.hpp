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

#include "ipend/plant.hpp"

namespace ipend {

/// Contract every closed-loop controller satisfies. The simulator calls
/// compute() once per integration step with the current reference and the
/// measured (full) state; the returned force is held over the step.
///
/// Implementations carry per-run mutable state and are owned by one run at a
/// time; clone() yields a fresh instance with the same configuration.
class Controller {
 public:
  virtual ~Controller() = default;

  virtual double compute(double t_s, double reference, const State& measured, double dt_s) = 0;
  virtual void reset() = 0;
  virtual std::unique_ptr<Controller> clone() const = 0;
  virtual std::string_view kind() const = 0;
};

/// Always outputs zero force.
class ZeroController final : public Controller {
 public:
  double compute(double, double, const State&, double) override { return 0.0; }
  void reset() override {}
  std::unique_ptr<Controller> clone() const override { return std::make_unique<ZeroController>(); }
  std::string_view kind() const override { return "zero"; }
};

}  // namespace ipend
