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


// Acceptance checks. Prints one PASS/FAIL line per criterion, indented detail
// lines below it, and exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <fmt/format.h>

#include "ipend/care.hpp"
#include "ipend/fuzzy.hpp"
#include "ipend/hybrid.hpp"
#include "ipend/lqr.hpp"
#include "ipend/metrics.hpp"
#include "ipend/plant.hpp"
#include "ipend/runner.hpp"
#include "ipend/sim.hpp"
#include "ipend/trajectory_io.hpp"

namespace fs = std::filesystem;

namespace ipend {
namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, std::string what) {
    details.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", what));
    pass = pass && ok;
  }
  void note(std::string what) { details.push_back("     " + what); }
};

std::string format_gain(const RowVec4& k) { return fmt::format("[{:.4f} {:.4f} {:.4f} {:.4f}]", k[0], k[1], k[2], k[3]); }

// 1. LQR gain for both linearization sign conventions against the published gain.
Verdict lqr_gain_reproduction() {
  Verdict v;
  v.note(fmt::format("published K {}", format_gain(kPublishedLqrGain)));
  bool any_match = false;
  const auto t0 = std::chrono::steady_clock::now();
  const std::pair<const char*, StateSpace> candidates[] = {
      {"jacobian", linearize(PlantParams{})},
      {"printed-convention", linearize_printed_convention(PlantParams{})},
  };
  for (const auto& [name, ss] : candidates) {
    const LqrDesign d = lqr_synthesize(ss, reference_weights());
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      worst = std::max(worst, std::abs(d.controller.k_gain[i] - kPublishedLqrGain[i]) / std::abs(kPublishedLqrGain[i]));
    }
    const bool match = worst <= 0.02;
    any_match = any_match || match;
    v.note(fmt::format("{:<19} K {}  max rel. deviation {:.1f}%  {}", name, format_gain(d.controller.k_gain),
                       100.0 * worst, match ? "match" : "no match"));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.check(any_match, "at least one candidate within 2% entrywise");
  v.check(seconds < 1.0, fmt::format("synthesis of both candidates took {:.3f} s (< 1 s)", seconds));
  return v;
}

// 2. CARE residuals.
Verdict care_correctness() {
  Verdict v;
  using Eigen::MatrixXd;
  const StateSpace ss = linearize(PlantParams{});
  const LqrWeights w = reference_weights();
  const MatrixXd r1 = MatrixXd::Constant(1, 1, w.r);
  const double rig = care_residual(ss.a, ss.b, w.q, r1, solve_care(ss.a, ss.b, w.q, r1).p);
  v.check(rig <= 1e-8, fmt::format("reference rig residual {:.3e}", rig));

  std::mt19937_64 rng(20260101);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> dim(2, 6);
  double worst = 0.0;
  int solved = 0;
  int within = 0;
  while (solved < 50) {
    const int n = dim(rng);
    MatrixXd a(n, n), b(n, 1), c(n, n);
    for (int i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
    for (int i = 0; i < b.size(); ++i) b.data()[i] = normal(rng);
    for (int i = 0; i < c.size(); ++i) c.data()[i] = normal(rng);
    if (!is_stabilizable(a, b)) continue;
    const MatrixXd q = c.transpose() * c + MatrixXd::Identity(n, n);
    const MatrixXd r = MatrixXd::Identity(1, 1);
    ++solved;
    try {
      const CareSolution sol = solve_care(a, b, q, r);
      const double res = care_residual(a, b, q, r, sol.p);
      worst = std::max(worst, res);
      if (res <= 1e-8) ++within;
    } catch (const CareNonConvergence& e) {
      worst = std::max(worst, e.last_residual());
      v.note(fmt::format("system {} (n = {}): {}", solved, n, e.what()));
    }
  }
  v.check(within == 50, fmt::format("50 random stabilizable systems: {} within 1e-8, worst residual {:.3e}",
                                    within, worst));

  const MatrixXd one = MatrixXd::Ones(1, 1);
  const double p = solve_care(MatrixXd::Zero(1, 1), one, one, one).p(0, 0);
  v.check(std::abs(p - 1.0) <= 1e-10, fmt::format("scalar case p = {:.15f} (exact 1)", p));
  return v;
}

// 3. RK4 convergence order by Richardson estimate over dt = 4, 2, 1 ms.
Verdict integrator_order() {
  Verdict v;
  using Vec1L = Eigen::Matrix<long double, 1, 1>;
  auto exp_run = [](double dt) {
    Vec1L y{1.0L};
    const int n = static_cast<int>(std::lround(1.0 / dt));
    for (int k = 0; k < n; ++k) y = rk4_step([](const Vec1L& s, double) { return s; }, y, 0.0, dt);
    return y[0];
  };
  const long double e4 = exp_run(4e-3), e2 = exp_run(2e-3), e1 = exp_run(1e-3);
  const double exp_order = std::log2(static_cast<double>((e4 - e2) / (e2 - e1)));
  v.check(exp_order >= 3.9, fmt::format("y' = y: order {:.3f}", exp_order));

  const PlantDerivative f = nonlinear_plant(PlantParams{});
  auto pend_run = [&](double dt) {
    Vec4 y{M_PI / 2.0, 0.0, 0.0, 0.0};
    const int n = static_cast<int>(std::lround(1.0 / dt));
    for (int k = 0; k < n; ++k) y = rk4_step(f, y, 0.0, dt);
    return y;
  };
  const Vec4 p4 = pend_run(4e-3), p2 = pend_run(2e-3), p1 = pend_run(1e-3);
  const double pend_order = std::log2((p4 - p2).norm() / (p2 - p1).norm());
  v.check(pend_order >= 3.9, fmt::format("unforced nonlinear pendulum from theta = pi/2: order {:.3f}", pend_order));
  return v;
}

// 4. Linearization against finite differences, and linear vs nonlinear closed loop.
Verdict model_consistency() {
  Verdict v;
  const PlantParams p;
  const StateSpace ss = linearize(p);
  constexpr double h = 1e-6;
  double worst = 0.0;
  for (int j = 0; j < 5; ++j) {
    Vec4 plus = Vec4::Zero(), minus = Vec4::Zero();
    const double fp = j == 4 ? h : 0.0;
    if (j < 4) {
      plus[j] = h;
      minus[j] = -h;
    }
    const Vec4 col = (nonlinear_derivative(p, State::from_vector(plus), fp) -
                      nonlinear_derivative(p, State::from_vector(minus), -fp)) /
                     (2.0 * h);
    const Vec4 analytic = j < 4 ? Vec4(ss.a.col(j)) : Vec4(ss.b.col(0));
    worst = std::max(worst, (col - analytic).cwiseAbs().maxCoeff());
  }
  v.check(worst <= 1e-6, fmt::format("Jacobian vs central differences, worst entry error {:.3e}", worst));

  LqrStateFeedback lqr(lqr_synthesize(ss, reference_weights()).controller);
  SimConfig cfg;
  cfg.duration_s = 5.0;
  cfg.reference = {0.01, 0.0};
  const Trajectory nl = run_closed_loop(p, lqr, cfg);
  const Trajectory lin = run_closed_loop(linear_plant(ss), lqr, cfg);
  double diff = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < nl.size(); ++k) {
    diff = std::max(diff, (nl.states[k].to_vector() - lin.states[k].to_vector()).cwiseAbs().maxCoeff());
    scale = std::max(scale, lin.states[k].to_vector().cwiseAbs().maxCoeff());
  }
  v.check(diff <= 0.02 * scale,
          fmt::format("0.01 m LQR step over 5 s: sup-norm gap {:.3e} = {:.4f}% of peak", diff, 100.0 * diff / scale));
  return v;
}

double oracle_membership(const MembershipFunction& mf, double x) {
  const auto& bp = mf.breakpoints();
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (mf.kind() == MembershipKind::triangular) {
    if (x <= bp[0] || x >= bp[2]) return x == bp[1] ? 1.0 : 0.0;
    return x <= bp[1] ? (x - bp[0]) / (bp[1] - bp[0]) : (bp[2] - x) / (bp[2] - bp[1]);
  }
  if (x >= bp[1] && x <= bp[2]) return 1.0;
  if (x < bp[1]) return bp[0] == -inf ? 1.0 : (x <= bp[0] ? 0.0 : (x - bp[0]) / (bp[1] - bp[0]));
  return bp[3] == inf ? 1.0 : (x >= bp[3] ? 0.0 : (bp[3] - x) / (bp[3] - bp[2]));
}

// 5. Fuzzy engine against a plain 49-rule enumeration, plus its structural properties.
Verdict fuzzy_engine() {
  Verdict v;
  const FuzzySystem fs = default_fuzzy_system();
  const FuzzyEngine engine(fs);
  auto oracle = [&](double a, double b) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) {
        const double mu = std::min(oracle_membership(fs.input1_terms[i], a * fs.input_scale1),
                                   oracle_membership(fs.input2_terms[j], b * fs.input_scale2));
        num += mu * fs.output_centers[fs.rule_table[i][j]];
        den += mu;
      }
    }
    return num / den * fs.output_scale;
  };
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  double worst_oracle = 0.0, worst_odd = 0.0, worst_bound = 0.0;
  double zmax = 0.0;
  for (double z : fs.output_centers) zmax = std::max(zmax, std::abs(z));
  for (int k = 0; k < 1000; ++k) {
    const double a = dist(rng), b = dist(rng);
    const double u = engine.infer(a, b);
    worst_oracle = std::max(worst_oracle, std::abs(u - oracle(a, b)));
    worst_odd = std::max(worst_odd, std::abs(engine.infer(-a, -b) + u));
    worst_bound = std::max(worst_bound, std::abs(u));
  }
  v.check(worst_oracle <= 1e-12, fmt::format("1000 random inputs, worst oracle gap {:.3e}", worst_oracle));
  v.check(worst_odd <= 1e-12, fmt::format("odd symmetry, worst gap {:.3e}", worst_odd));
  v.check(worst_bound <= fs.output_scale * zmax,
          fmt::format("|output| <= {:.3f} (largest center), observed {:.6f}", fs.output_scale * zmax, worst_bound));
  double min_cover = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j <= 200; ++j) {
      const double x1 = -1.0 + 2.0 * i / 200.0, x2 = -1.0 + 2.0 * j / 200.0;
      double total = 0.0;
      for (int r = 0; r < 49; ++r) {
        total += std::min(fuzzify(fs.input1_terms[r / 7], x1), fuzzify(fs.input2_terms[r % 7], x2));
      }
      min_cover = std::min(min_cover, total);
    }
  }
  v.check(min_cover > 0.0, fmt::format("201 x 201 grid coverage, smallest firing sum {:.3f}", min_cover));
  return v;
}

struct MatrixRuns {
  MatrixResult result;
  fs::path dir;
  std::map<std::string, const ScenarioOutcome*> by_key;  // "task/condition/label"

  const ScenarioOutcome& get(Task t, Condition c, const std::string& label) const {
    return *by_key.at(fmt::format("{}/{}/{}", to_string(t), to_string(c), label));
  }
};

Metrics metrics_of(const ScenarioOutcome& o, SignalKind signal) {
  const auto y = extract_signal(o.trajectory, signal);
  return compute_metrics(o.trajectory.times_s, y, signal_target(o.trajectory, signal), o.scenario.metrics);
}

double settling_or_inf(const Metrics& m) {
  return m.settled() ? *m.settling_time_s : std::numeric_limits<double>::infinity();
}

double settle_or(const Metrics& m) { return m.settled() ? *m.settling_time_s : NAN; }

// 6. Qualitative orderings on the built-in scenario set.
Verdict table_ordering(const MatrixRuns& runs) {
  Verdict v;
  using enum Task;
  const auto nominal = Condition::nominal;
  auto settle = [&](Task t, Condition c, const char* label) {
    return settling_or_inf(metrics_of(runs.get(t, c, label), SignalKind::cart_position));
  };
  {
    const double h = settle(cart_position, nominal, "hybrid");
    const double p = settle(cart_position, nominal, "pid");
    const double l = settle(cart_position, nominal, "lqr");
    v.check(h < p && p < l, fmt::format("(a) cart nominal settling hybrid {:.4f} < pid {:.4f} < lqr {:.4f}", h, p, l));
    const double ratio = 100.0 * h / p;
    v.check(std::abs(ratio - 54.0) <= 15.0, fmt::format("(a) hybrid/pid settling {:.1f}% vs 54% +- 15", ratio));
  }
  {
    const auto sse = [&](const char* label) {
      return metrics_of(runs.get(cart_position, nominal, label), SignalKind::cart_position).steady_state_error;
    };
    const double h = sse("hybrid"), p = sse("pid"), l = sse("lqr");
    v.check(std::abs(p) <= 1e-3 && std::abs(h) <= 1e-3,
            fmt::format("(b) step-tracking SSE pid {:.2e}, hybrid {:.2e} within 1e-3", p, h));
    v.check(std::abs(l) > 1e-3, fmt::format("(b) lqr SSE {:.2e} nonzero (beyond 1e-3)", l));
  }
  {
    std::map<std::string, double> degradation;
    for (const char* label : {"hybrid", "pid", "lqr"}) {
      const double base = settle(cart_position, nominal, label);
      const double varied = settle(cart_position, Condition::parameter_variation, label);
      degradation[label] = varied / base - 1.0;
      v.note(fmt::format("(c) {:<6} settling {:.4f} -> {:.4f} s under +20% cart mass ({:+.2f}%)", label, base, varied,
                         100.0 * degradation[label]));
    }
    v.check(degradation["lqr"] > degradation["pid"] && degradation["lqr"] > degradation["hybrid"],
            "(c) lqr settling time degrades most under +20% cart mass");
  }
  {
    bool all_reach = true;
    std::map<std::string, double> ts;
    for (const char* label : {"hybrid", "pid", "lqr"}) {
      const auto& o = runs.get(simultaneous, nominal, label);
      const Metrics mx = metrics_of(o, SignalKind::cart_position);
      ts[label] = settling_or_inf(mx);
      all_reach = all_reach && mx.settled() && std::abs(mx.steady_state_error) < 0.02 * 0.3;
    }
    const auto& hyb = runs.get(simultaneous, nominal, "hybrid");
    const Metrics mt = metrics_of(hyb, SignalKind::pendulum_angle);
    const bool upright = mt.settled() && std::abs(hyb.trajectory.states.back().theta_rad) < 1e-3;
    v.check(upright, fmt::format("(d) hybrid holds theta upright (theta settles at {:.4f} s)", settle_or(mt)));
    v.check(all_reach, "(d) all three controllers reach the 0.3 m reference");
    v.check(ts["hybrid"] < ts["pid"] && ts["hybrid"] < ts["lqr"],
            fmt::format("(d) hybrid settles earliest: hybrid {:.4f}, lqr {:.4f}, pid {:.4f}", ts["hybrid"], ts["lqr"],
                        ts["pid"]));
  }
  return v;
}

// 7. Metric oracles.
Verdict metrics_oracles() {
  Verdict v;
  const double dt = 1e-3;
  for (double tau : {0.5, 1.0, 2.0}) {
    std::vector<double> t, y;
    for (int k = 0; k <= 40000; ++k) {
      t.push_back(k * dt);
      y.push_back(1.0 - std::exp(-k * dt / tau));
    }
    const auto ts = settling_time(t, y, 1.0, 0.02);
    const double expected = -tau * std::log(0.02);
    v.check(ts && std::abs(*ts - expected) <= dt,
            fmt::format("first order tau = {}: settling {:.4f} s vs {:.4f} s", tau, ts.value_or(NAN), expected));
  }
  for (double zeta : {0.2, 0.5, 0.7}) {
    const double wd = std::sqrt(1.0 - zeta * zeta);
    std::vector<double> y;
    for (int k = 0; k <= 30000; ++k) {
      const double t = k * dt;
      y.push_back(1.0 - std::exp(-zeta * t) * (std::cos(wd * t) + zeta / wd * std::sin(wd * t)));
    }
    const double expected = 100.0 * std::exp(-M_PI * zeta / wd);
    const double got = overshoot_pct(y, 1.0);
    v.check(std::abs(got - expected) <= 0.1, fmt::format("zeta = {}: overshoot {:.3f}% vs {:.3f}%", zeta, got, expected));
  }
  return v;
}

std::map<std::string, std::string> directory_contents(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[e.path().filename().string()] = ss.str();
  }
  return out;
}

// 8. Determinism: two full runs, and a trajectory pinned by a golden file
// generated on another toolchain.
Verdict determinism(const MatrixRuns& first) {
  Verdict v;
  const fs::path second = first.dir.parent_path() / "second";
  RunOptions opts;
  opts.output_dir = second;
  opts.parallel = false;
  run_matrix(builtin_scenarios(), opts);
  const auto a = directory_contents(first.dir);
  const auto b = directory_contents(second);
  v.check(a.size() == 20 && a == b,
          fmt::format("two runs of the built-in set (parallel, serial): {} files, byte-identical: {}", a.size(),
                      a == b ? "yes" : "no"));

  Scenario golden = default_scenario(ControllerKind::lqr, Task::simultaneous, Condition::disturbance);
  golden.name = "golden";
  golden.sim.duration_s = 2.0;
  golden.sim.seed = 7;
  const std::string actual = trajectory_csv(run_scenario(golden).trajectory);
  const fs::path golden_path = fs::path(IPEND_TEST_DATA_DIR) / "golden_lqr_disturbance.csv";
  std::ifstream in(golden_path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  v.check(fs::exists(golden_path), fmt::format("golden trajectory {}", golden_path.filename().string()));
  v.check(ss.str() == actual, "disturbed LQR trajectory matches the pinned golden bytes");
  return v;
}

// 9. Adaptation-off reduction and parameter boundedness on the built-in set.
Verdict mrac_sanity(const MatrixRuns& runs) {
  Verdict v;
  HybridChannelConfig cfg;
  cfg.gains = PidGains{3.0, 1.2, 0.4};
  cfg.channel_gains = PidGains{2.0, 0.5, 0.1};
  cfg.fuzzy.output_scale = 5.0;
  cfg.adaptation = AdaptiveParams{1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  HybridChannel h(cfg, "x");
  const FuzzyEngine engine(cfg.fuzzy);
  const double dt = 1e-3;
  PidState crisp, integral, derivative;
  const PidGains integral_only{0.0, 1.0, 0.0, 0.01};
  const PidGains derivative_only{0.0, 0.0, 1.0, 0.01};
  std::size_t mismatches = 0;
  for (int k = 0; k < 5000; ++k) {
    const double r = k < 100 ? 0.0 : 1.0;
    const double y = 1.0 - std::exp(-k * dt) + 0.05 * std::sin(0.02 * k);
    const double e = r - y;
    integral = pid_step(integral_only, integral, e, dt).state;
    derivative = pid_step(derivative_only, derivative, e, dt).state;
    const auto pid = pid_step(cfg.gains, crisp, e, dt);
    crisp = pid.state;
    const double expected = engine.infer(2.0 * e + 0.5 * integral.integral_accumulator,
                                         0.1 * derivative.filtered_derivative) +
                            pid.control;
    mismatches += h.step(k * dt, r, y, dt) != expected;
  }
  v.check(mismatches == 0, fmt::format("gamma = 0: {} of 5000 steps differ from fuzzy(PI, D of e) + PID(e)", mismatches));

  std::size_t clamps = 0;
  double peak = 0.0;
  int hybrid_runs = 0;
  for (const auto& o : runs.result.outcomes) {
    if (controller_label(o.scenario.controller) != "hybrid") continue;
    ++hybrid_runs;
    clamps += o.clamp_events.size();
    peak = std::max(peak, o.peak_parameter_magnitude);
  }
  v.check(hybrid_runs == 6 && clamps == 0,
          fmt::format("{} hybrid scenarios, {} clamp events", hybrid_runs, clamps));
  v.check(peak < 100.0, fmt::format("largest |theta| {:.4f} inside the [-100, 100] box", peak));
  return v;
}

}  // namespace
}  // namespace ipend

int main() {
  using namespace ipend;
  const fs::path work = fs::temp_directory_path() / fmt::format("ipend-acceptance-{}", ::getpid());
  fs::remove_all(work);

  MatrixRuns runs;
  runs.dir = work / "first";
  RunOptions opts;
  opts.output_dir = runs.dir;
  runs.result = run_matrix(builtin_scenarios(), opts);
  for (const auto& o : runs.result.outcomes) {
    runs.by_key[fmt::format("{}/{}/{}", to_string(o.scenario.task), to_string(o.scenario.condition),
                            controller_label(o.scenario.controller))] = &o;
  }

  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"LQR gain reproduction", lqr_gain_reproduction},
      {"CARE correctness", care_correctness},
      {"integrator order", integrator_order},
      {"model consistency", model_consistency},
      {"fuzzy engine", fuzzy_engine},
      {"table-ordering reproduction", [&] { return table_ordering(runs); }},
      {"metrics oracles", metrics_oracles},
      {"determinism", [&] { return determinism(runs); }},
      {"MRAC sanity", [&] { return mrac_sanity(runs); }},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.check(false, fmt::format("threw: {}", e.what()));
    }
    fmt::print("{} {} {}\n", v.pass ? "PASS" : "FAIL", index++, name);
    for (const auto& d : v.details) fmt::print("    {}\n", d);
    failures += !v.pass;
  }
  fs::remove_all(work);
  fmt::print("{} of 9 criteria pass\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
