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


#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ipend/metrics.hpp"
#include "ipend/pid.hpp"
#include "ipend/sim.hpp"

namespace ipend {
namespace {

std::vector<double> run_pid(const PidGains& g, const std::vector<double>& errors, double dt) {
  PidState s;
  std::vector<double> out;
  for (double e : errors) {
    auto r = pid_step(g, s, e, dt);
    s = r.state;
    out.push_back(r.control);
  }
  return out;
}

TEST(PidTest, ProportionalOnly) {
  const auto r = pid_step(PidGains{2.0, 0.0, 0.0}, PidState{}, 1.0, 0.01);
  EXPECT_EQ(r.control, 2.0);
}

TEST(PidTest, IntegralOfUnitErrorOverOneSecond) {
  const auto u = run_pid(PidGains{0.0, 1.0, 0.0}, std::vector<double>(10, 1.0), 0.1);
  EXPECT_NEAR(u.back(), 1.0, 1e-12);
}

TEST(PidTest, BackwardDifferenceDerivative) {
  const auto u = run_pid(PidGains{0.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 1.0, 1.0}, 0.1);
  EXPECT_EQ(u[0], 0.0);
  EXPECT_NEAR(u[1], 10.0, 1e-12);
  EXPECT_EQ(u[2], 0.0);
  EXPECT_EQ(u[3], 0.0);
}

TEST(PidTest, FirstSampleHasNoDerivativeKick) {
  const auto r = pid_step(PidGains{0.0, 0.0, 5.0, 0.0}, PidState{}, 3.0, 0.01);
  EXPECT_EQ(r.control, 0.0);
  EXPECT_TRUE(r.state.primed);
}

TEST(PidTest, FilteredDerivativeApproachesRawValue) {
  std::vector<double> ramp;
  for (int k = 0; k < 2000; ++k) ramp.push_back(0.5 * k * 1e-3);
  const auto u = run_pid(PidGains{0.0, 0.0, 1.0, 0.01}, ramp, 1e-3);
  EXPECT_NEAR(u.back(), 0.5, 1e-9);
  EXPECT_LT(u[5], 0.5);
}

TEST(PidTest, AccumulatorIsTrapezoidalIntegral) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> e(500);
  for (double& v : e) v = dist(rng);
  PidState s;
  double expected = e[0] * 0.01;
  s = pid_step(PidGains{1.0, 1.0, 1.0}, s, e[0], 0.01).state;
  for (std::size_t k = 1; k < e.size(); ++k) {
    s = pid_step(PidGains{1.0, 1.0, 1.0}, s, e[k], 0.01).state;
    expected += 0.5 * (e[k] + e[k - 1]) * 0.01;
  }
  EXPECT_NEAR(s.integral_accumulator, expected, 1e-12);
}

TEST(PidTest, OutputIsLinearInErrorHistory) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const PidGains g{1.3, 0.7, 0.2, 0.01};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(200), b(200), sum(200);
    const double alpha = dist(rng) * 3.0;
    const double beta = dist(rng) * 3.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      a[k] = dist(rng);
      b[k] = dist(rng);
      sum[k] = alpha * a[k] + beta * b[k];
    }
    const auto ua = run_pid(g, a, 1e-3);
    const auto ub = run_pid(g, b, 1e-3);
    const auto us = run_pid(g, sum, 1e-3);
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_NEAR(us[k], alpha * ua[k] + beta * ub[k], 1e-9 * (1.0 + std::abs(us[k])));
    }
  }
}

TEST(PidTest, ResetClearsState) {
  PidState s{1.0, 2.0, 3.0, true};
  s.reset();
  EXPECT_EQ(s, PidState{});
}

TEST(PidTest, RejectsBadGains) {
  EXPECT_THROW((PidGains{NAN, 0, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((PidGains{1, 0, 0, -0.1}.validate()), std::invalid_argument);
  EXPECT_THROW(pid_step(PidGains{}, PidState{}, 1.0, 0.0), std::invalid_argument);
}

TEST(PidPositionTest, ZeroReferenceZeroStateGivesZeroForce) {
  for (auto topology : {CartLoopTopology::parallel, CartLoopTopology::cascade}) {
    PidPositionController c(kTable2PositionGains, kTable2VelocityGains, topology);
    for (int k = 0; k < 10; ++k) EXPECT_EQ(c.compute(k * 1e-3, 0.0, State{}, 1e-3), 0.0);
  }
}

TEST(PidPositionTest, UnitStepSettles) {
  PidPositionController c(kTable2PositionGains, kTable2VelocityGains);
  SimConfig cfg;
  cfg.reference = {1.0, 0.0};
  const Trajectory t = run_closed_loop(PlantParams{}, c, cfg);
  const Metrics m = compute_metrics(t.times_s, t.x(), 1.0);
  ASSERT_TRUE(m.settled());
  EXPECT_GT(m.overshoot_pct, 0.0);
  EXPECT_LT(m.overshoot_pct, 100.0);
  EXPECT_LT(std::abs(m.steady_state_error), 1e-3);
}

TEST(PidSimultaneousTest, BalancedAtReferenceGivesZeroForce) {
  PidSimultaneousController c(kSimultaneousAngleGains, kSimultaneousPositionGains);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(c.compute(k * 1e-3, 0.3, State{0.0, 0.0, 0.3, 0.0}, 1e-3), 0.0);
}

TEST(PidSimultaneousTest, StepReturnsPendulumUpright) {
  PidSimultaneousController c(kSimultaneousAngleGains, kSimultaneousPositionGains);
  SimConfig cfg;
  cfg.reference = {0.3, 0.0};
  const Trajectory t = run_closed_loop(PlantParams{}, c, cfg);
  EXPECT_LT(std::abs(t.states.back().theta_rad), 1e-3);
  EXPECT_NEAR(t.states.back().x_m, 0.3, 0.01);
}

TEST(PidSimultaneousTest, LowGainSetDoesNotStabilize) {
  PidSimultaneousController c(kTable3AngleGains, kTable3PositionGains);
  SimConfig cfg;
  cfg.duration_s = 10.0;
  cfg.initial_state.theta_rad = 0.01;
  bool upright = true;
  try {
    const Trajectory t = run_closed_loop(PlantParams{}, c, cfg);
    for (const State& s : t.states) upright = upright && std::abs(s.theta_rad) < 0.5;
  } catch (const SimulationFault&) {
    upright = false;
  }
  EXPECT_FALSE(upright);
}

}  // namespace
}  // namespace ipend
