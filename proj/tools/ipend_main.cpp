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

// Command-line front end: run scenario files, reproduce the published
// tables, analyze a trajectory CSV, or print an LQR design.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ipend/lqr.hpp"
#include "ipend/metrics.hpp"
#include "ipend/repro.hpp"
#include "ipend/runner.hpp"
#include "ipend/scenario.hpp"
#include "ipend/trajectory_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFault = 1;
constexpr int kExitConfig = 2;

std::string default_output_dir() {
  const char* env = std::getenv("IPEND_OUTPUT_DIR");
  return env != nullptr && *env != '\0' ? env : "ipend-out";
}

int cmd_run(const std::vector<std::string>& configs, std::optional<std::uint64_t> seed, const std::string& out,
            bool serial) {
  std::vector<ipend::Scenario> scenarios;
  try {
    for (const auto& path : configs) scenarios.push_back(ipend::load_scenario(path));
  } catch (const ipend::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const ipend::MatrixResult result = ipend::run_matrix(std::move(scenarios), {out, seed, !serial});
  std::cout << ipend::render_text(result.reports);
  for (const auto& e : result.errors) std::cerr << "error: " << e << '\n';
  return result.exit_code == 0 ? kExitOk : kExitFault;
}

int cmd_analyze(const std::string& csv, const std::string& signal, double band, double tail) {
  std::ifstream in(csv, std::ios::binary);
  if (!in) {
    std::cerr << csv << ": cannot open\n";
    return kExitConfig;
  }
  ipend::Trajectory traj;
  try {
    traj = ipend::read_trajectory_csv(in);
  } catch (const std::exception& e) {
    std::cerr << csv << ": " << e.what() << '\n';
    return kExitConfig;
  }
  if (traj.size() == 0) {
    std::cerr << csv << ": no samples\n";
    return kExitConfig;
  }
  std::vector<ipend::SignalKind> kinds;
  for (auto k : {ipend::SignalKind::cart_position, ipend::SignalKind::cart_velocity,
                 ipend::SignalKind::pendulum_angle}) {
    if (signal == "all" || signal == ipend::signal_name(k)) kinds.push_back(k);
  }
  const ipend::MetricsOptions opts{band, tail};
  const ipend::LabeledTrajectory run{"trajectory", &traj};
  std::vector<ipend::ComparisonReport> reports;
  for (auto k : kinds) reports.push_back(ipend::summarize({&run, 1}, csv, k, opts));
  std::cout << ipend::render_text(reports);
  return kExitOk;
}

int cmd_lqr_gain(const std::string& config) {
  ipend::Scenario s;
  try {
    s = ipend::load_scenario(config);
  } catch (const ipend::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    const ipend::LqrDesign d = ipend::lqr_synthesize(ipend::linearize(s.plant), s.lqr_weights, s.lqr_tracked_output);
    const Eigen::IOFormat row(8, 0, " ", "\n", "  ", "");
    std::cout << "K = [" << d.controller.k_gain.format(Eigen::IOFormat(8, 0, " ", " ")) << "]\n";
    std::cout << fmt::format("N = {:.8g}\n", d.controller.n_scale);
    std::cout << "P =\n" << d.p.format(row) << '\n';
    std::cout << fmt::format("CARE residual = {:.3e}\n", d.care_residual);
  } catch (const std::exception& e) {
    std::cerr << "lqr synthesis failed: " << e.what() << '\n';
    return kExitFault;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cart-pendulum controller comparison (PID, LQR, adaptive fuzzy)"};
  app.require_subcommand(1);

  std::vector<std::string> configs;
  std::optional<std::uint64_t> seed;
  std::string out = default_output_dir();
  bool serial = false;
  auto* run = app.add_subcommand("run", "Simulate scenario files and write trajectories plus a report");
  run->add_option("configs", configs, "Scenario files")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the configured noise seed");
  run->add_option("--out", out, "Output directory (env IPEND_OUTPUT_DIR)");
  run->add_flag("--serial", serial, "Run scenarios one after another");

  std::optional<std::string> repro_out;
  auto* repro = app.add_subcommand("repro", "Compare the built-in scenario set against the published tables");
  repro->add_option("--out", repro_out, "Also write trajectories and report to this directory");

  std::string csv;
  std::string signal = "all";
  double band = 0.02;
  double tail = 0.1;
  auto* analyze = app.add_subcommand("analyze", "Compute metrics for an existing trajectory CSV");
  analyze->add_option("csv", csv, "Trajectory CSV")->required();
  analyze->add_option("--signal", signal, "x, x_dot, theta or all")->check(CLI::IsMember({"x", "x_dot", "theta", "all"}));
  analyze->add_option("--band", band, "Settling band fraction")->check(CLI::PositiveNumber);
  analyze->add_option("--tail", tail, "Steady-state tail fraction")->check(CLI::Range(1e-9, 1.0));

  std::string lqr_config;
  auto* lqr = app.add_subcommand("lqr-gain", "Print K, N and P for a scenario's plant and weights");
  lqr->add_option("config", lqr_config, "Scenario file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (run->parsed()) return cmd_run(configs, seed, out, serial);
  if (repro->parsed()) {
    std::cout << ipend::table_repro({repro_out ? std::optional<std::filesystem::path>(*repro_out) : std::nullopt});
    return kExitOk;
  }
  if (analyze->parsed()) return cmd_analyze(csv, signal, band, tail);
  if (lqr->parsed()) return cmd_lqr_gain(lqr_config);
  return kExitConfig;
}
