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

#include "ipend/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace ipend {

namespace {

using boost::property_tree::ptree;

constexpr std::array<ControllerKind, 5> kControllerKinds{ControllerKind::pid_position,
                                                         ControllerKind::pid_simultaneous, ControllerKind::lqr,
                                                         ControllerKind::hybrid, ControllerKind::hybrid_simultaneous};
constexpr std::array<Condition, 3> kConditions{Condition::nominal, Condition::disturbance,
                                               Condition::parameter_variation};
constexpr std::array<Task, 2> kTasks{Task::cart_position, Task::simultaneous};

template <class E, std::size_t N>
E enum_from(const std::array<E, N>& values, std::string_view text, const std::string& path) {
  for (E v : values) {
    if (to_string(v) == text) return v;
  }
  std::string allowed;
  for (E v : values) allowed += fmt::format("{}{}", allowed.empty() ? "" : ", ", to_string(v));
  throw ConfigError(fmt::format("{}: unknown value '{}' (expected one of {})", path, text, allowed));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view text, const std::string& path, bool allow_infinite) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || std::isnan(v)) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", path, text));
  }
  if (!allow_infinite && !std::isfinite(v)) throw ConfigError(fmt::format("{}: must be finite", path));
  return v;
}

std::string fmt_double(double v) { return fmt::format("{:.17g}", v); }

/// One INI section. Every key must be consumed before finish().
class Section {
 public:
  Section(std::string name, const ptree* node) : name_(std::move(name)), node_(node) {}

  std::string path(std::string_view key) const { return fmt::format("{}.{}", name_, key); }

  std::optional<std::string> take(std::string_view key) {
    if (node_ == nullptr) return std::nullopt;
    const auto it = node_->find(std::string(key));
    if (it == node_->not_found()) return std::nullopt;
    used_.insert(std::string(key));
    return std::string(trim(it->second.data()));
  }

  bool take_peek(std::string_view key) const {
    return node_ != nullptr && node_->find(std::string(key)) != node_->not_found();
  }

  void number(std::string_view key, double& out, bool allow_infinite = false) {
    if (auto v = take(key)) out = parse_double(*v, path(key), allow_infinite);
  }

  void positive(std::string_view key, double& out) {
    if (auto v = take(key)) {
      out = parse_double(*v, path(key), false);
      if (!(out > 0.0)) throw ConfigError(fmt::format("{}: must be > 0", path(key)));
    }
  }

  void nonnegative(std::string_view key, double& out) {
    if (auto v = take(key)) {
      out = parse_double(*v, path(key), false);
      if (!(out >= 0.0)) throw ConfigError(fmt::format("{}: must be >= 0", path(key)));
    }
  }

  template <std::size_t N>
  void numbers(std::string_view key, std::array<double, N>& out, bool allow_infinite = false) {
    if (auto v = take(key)) {
      const auto words = split_words(*v);
      if (words.size() != N) {
        throw ConfigError(fmt::format("{}: expected {} values, got {}", path(key), N, words.size()));
      }
      for (std::size_t i = 0; i < N; ++i) out[i] = parse_double(words[i], path(key), allow_infinite);
    }
  }

  void finish() const {
    if (node_ == nullptr) return;
    for (const auto& [key, child] : *node_) {
      if (!used_.count(key)) throw ConfigError(fmt::format("{}: unknown key", path(key)));
    }
  }

 private:
  std::string name_;
  const ptree* node_;
  std::set<std::string> used_;
};

void parse_gains(Section& sec, PidGains& gains) {
  sec.number("kp", gains.kp);
  sec.number("ki", gains.ki);
  sec.number("kd", gains.kd);
  sec.nonnegative("tau_s", gains.derivative_filter_tau_s);
  sec.finish();
}

MembershipFunction parse_membership(std::string_view text, const std::string& path) {
  const auto words = split_words(text);
  if (words.empty()) throw ConfigError(fmt::format("{}: empty membership function", path));
  std::vector<double> bp;
  for (std::size_t i = 1; i < words.size(); ++i) bp.push_back(parse_double(words[i], path, true));
  try {
    if (words[0] == "triangular" && bp.size() == 3) return MembershipFunction::triangular(bp[0], bp[1], bp[2]);
    if (words[0] == "trapezoidal" && bp.size() == 4) {
      return MembershipFunction::trapezoidal(bp[0], bp[1], bp[2], bp[3]);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
  throw ConfigError(fmt::format("{}: expected 'triangular a b c' or 'trapezoidal a b c d'", path));
}

std::string format_membership(const MembershipFunction& mf) {
  std::string out = mf.kind() == MembershipKind::triangular ? "triangular" : "trapezoidal";
  for (double b : mf.breakpoints()) out += " " + fmt_double(b);
  return out;
}

std::string term_key(std::string_view prefix, std::size_t i) {
  std::string label(kTermLabels[i]);
  for (char& c : label) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return fmt::format("{}_{}", prefix, label);
}

void parse_fuzzy_shape(Section& sec, FuzzySystem& fs) {
  for (std::size_t i = 0; i < kFuzzyTerms; ++i) {
    const std::string k1 = term_key("input1", i);
    if (auto v = sec.take(k1)) fs.input1_terms[i] = parse_membership(*v, sec.path(k1));
    const std::string k2 = term_key("input2", i);
    if (auto v = sec.take(k2)) fs.input2_terms[i] = parse_membership(*v, sec.path(k2));
    const std::string kr = term_key("rules", i);
    if (auto v = sec.take(kr)) {
      const auto words = split_words(*v);
      if (words.size() != kFuzzyTerms) {
        throw ConfigError(fmt::format("{}: expected {} term labels", sec.path(kr), kFuzzyTerms));
      }
      for (std::size_t j = 0; j < kFuzzyTerms; ++j) {
        const int idx = term_index(words[j]);
        if (idx < 0) throw ConfigError(fmt::format("{}: unknown term label '{}'", sec.path(kr), words[j]));
        fs.rule_table[i][j] = idx;
      }
    }
  }
  sec.numbers("output_centers", fs.output_centers);
  sec.finish();
}

void parse_hybrid(Section& sec, HybridChannelConfig& cfg) {
  sec.number("kp", cfg.gains.kp);
  sec.number("ki", cfg.gains.ki);
  sec.number("kd", cfg.gains.kd);
  sec.nonnegative("tau_s", cfg.gains.derivative_filter_tau_s);
  const bool any_channel = sec.take_peek("channel_kp") || sec.take_peek("channel_ki") ||
                           sec.take_peek("channel_kd") || sec.take_peek("channel_tau_s");
  if (auto mode = sec.take("channel_gains")) {
    if (*mode != "crisp") throw ConfigError(fmt::format("{}: expected 'crisp'", sec.path("channel_gains")));
    if (any_channel) {
      throw ConfigError(fmt::format("{}: conflicts with channel_kp/ki/kd/tau_s", sec.path("channel_gains")));
    }
    cfg.channel_gains.reset();
  }
  if (any_channel) {
    PidGains cg = cfg.channel_gains.value_or(cfg.gains);
    sec.number("channel_kp", cg.kp);
    sec.number("channel_ki", cg.ki);
    sec.number("channel_kd", cg.kd);
    sec.nonnegative("channel_tau_s", cg.derivative_filter_tau_s);
    cfg.channel_gains = cg;
  }
  sec.positive("model_omega_rads", cfg.model_omega_rads);
  sec.positive("model_damping", cfg.model_damping);
  sec.number("theta1", cfg.adaptation.theta1);
  sec.number("theta2", cfg.adaptation.theta2);
  sec.number("theta3", cfg.adaptation.theta3);
  sec.number("theta_prime", cfg.adaptation.theta_prime);
  sec.nonnegative("gamma_p", cfg.adaptation.gamma_p);
  sec.nonnegative("gamma_i", cfg.adaptation.gamma_i);
  sec.nonnegative("gamma_d", cfg.adaptation.gamma_d);
  sec.nonnegative("gamma_prime", cfg.adaptation.gamma_prime);
  sec.number("param_min", cfg.box.min);
  sec.number("param_max", cfg.box.max);
  sec.positive("input1_scale", cfg.fuzzy.input_scale1);
  sec.positive("input2_scale", cfg.fuzzy.input_scale2);
  sec.positive("output_scale_n", cfg.fuzzy.output_scale);
  sec.finish();
}

template <class F>
void checked(const std::string& path, F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
}

Task task_for(ControllerKind kind, Task requested) {
  switch (kind) {
    case ControllerKind::pid_position:
    case ControllerKind::hybrid:
      return Task::cart_position;
    case ControllerKind::pid_simultaneous:
    case ControllerKind::hybrid_simultaneous:
      return Task::simultaneous;
    case ControllerKind::lqr:
      break;
  }
  return requested;
}

HybridChannelConfig hybrid_channel(const PidGains& gains, double input1_scale, double input2_scale,
                                   double output_scale) {
  HybridChannelConfig cfg;
  cfg.gains = gains;
  cfg.fuzzy.input_scale1 = input1_scale;
  cfg.fuzzy.input_scale2 = input2_scale;
  cfg.fuzzy.output_scale = output_scale;
  return cfg;
}

void emit_gains(std::string& out, const char* section, const PidGains& g) {
  out += fmt::format("\n[{}]\nkp = {}\nki = {}\nkd = {}\ntau_s = {}\n", section, fmt_double(g.kp),
                     fmt_double(g.ki), fmt_double(g.kd), fmt_double(g.derivative_filter_tau_s));
}

void emit_hybrid(std::string& out, const char* section, const HybridChannelConfig& c) {
  const AdaptiveParams& a = c.adaptation;
  out += fmt::format("\n[{}]\n", section);
  const std::pair<const char*, double> rows[] = {
      {"kp", c.gains.kp},
      {"ki", c.gains.ki},
      {"kd", c.gains.kd},
      {"tau_s", c.gains.derivative_filter_tau_s},
      {"model_omega_rads", c.model_omega_rads},
      {"model_damping", c.model_damping},
      {"theta1", a.theta1},
      {"theta2", a.theta2},
      {"theta3", a.theta3},
      {"theta_prime", a.theta_prime},
      {"gamma_p", a.gamma_p},
      {"gamma_i", a.gamma_i},
      {"gamma_d", a.gamma_d},
      {"gamma_prime", a.gamma_prime},
      {"param_min", c.box.min},
      {"param_max", c.box.max},
      {"input1_scale", c.fuzzy.input_scale1},
      {"input2_scale", c.fuzzy.input_scale2},
      {"output_scale_n", c.fuzzy.output_scale},
  };
  for (const auto& [k, v] : rows) out += fmt::format("{} = {}\n", k, fmt_double(v));
  if (c.channel_gains) {
    out += fmt::format("channel_kp = {}\nchannel_ki = {}\nchannel_kd = {}\nchannel_tau_s = {}\n",
                       fmt_double(c.channel_gains->kp), fmt_double(c.channel_gains->ki),
                       fmt_double(c.channel_gains->kd), fmt_double(c.channel_gains->derivative_filter_tau_s));
  } else {
    out += "channel_gains = crisp\n";
  }
}

}  // namespace

std::string_view to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::pid_position: return "pid-position";
    case ControllerKind::pid_simultaneous: return "pid-simultaneous";
    case ControllerKind::lqr: return "lqr";
    case ControllerKind::hybrid: return "hybrid";
    case ControllerKind::hybrid_simultaneous: return "hybrid-simultaneous";
  }
  return "?";
}

std::string_view to_string(Condition condition) {
  switch (condition) {
    case Condition::nominal: return "nominal";
    case Condition::disturbance: return "disturbance";
    case Condition::parameter_variation: return "parameter-variation";
  }
  return "?";
}

std::string_view to_string(Task task) {
  return task == Task::cart_position ? "cart-position" : "simultaneous";
}

std::string_view to_string(CartLoopTopology topology) {
  return topology == CartLoopTopology::parallel ? "parallel" : "cascade";
}

PlantParams Scenario::effective_plant() const {
  PlantParams p = plant;
  p.cart_mass_kg *= variation.cart_mass_multiplier;
  p.bob_mass_kg *= variation.bob_mass_multiplier;
  p.pendulum_length_m *= variation.pendulum_length_multiplier;
  return p;
}

std::vector<SignalKind> Scenario::reported_signals() const {
  if (task == Task::cart_position) return {SignalKind::cart_position, SignalKind::cart_velocity};
  return {SignalKind::cart_position, SignalKind::pendulum_angle};
}

void Scenario::validate() const {
  if (name.empty()) throw ConfigError("scenario.name: must not be empty");
  if (task_for(controller, task) != task) {
    throw ConfigError(fmt::format("scenario.task: controller '{}' does not support task '{}'",
                                  to_string(controller), to_string(task)));
  }
  checked("plant", [&] { plant.validate(); });
  for (double m : {variation.cart_mass_multiplier, variation.bob_mass_multiplier,
                   variation.pendulum_length_multiplier}) {
    if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("plant: variation multipliers must be > 0");
  }
  checked("sim", [&] { sim.validate(); });
  checked("disturbance", [&] { sim.disturbance.validate(); });
  if (sim.actuator_limit_n && !(*sim.actuator_limit_n > 0.0)) {
    throw ConfigError("sim.actuator_limit_n: must be > 0 or 'none'");
  }
  if (!(metrics.band_fraction > 0.0) || !std::isfinite(metrics.band_fraction)) {
    throw ConfigError("metrics.band_fraction: must be > 0");
  }
  if (!(metrics.tail_fraction > 0.0 && metrics.tail_fraction <= 1.0)) {
    throw ConfigError("metrics.tail_fraction: must lie in (0, 1]");
  }
  checked("lqr", [&] { lqr_weights.validate(); });
  if (lqr_tracked_output < 0 || lqr_tracked_output > 3) {
    throw ConfigError("lqr.tracked_output_index: must be 0..3");
  }
  checked("pid_position", [&] { pid_position.validate(); });
  checked("pid_velocity", [&] { pid_velocity.validate(); });
  checked("pid_angle", [&] { pid_angle.validate(); });
  checked("pid_sim_position", [&] { pid_sim_position.validate(); });
  checked("hybrid_position", [&] { hybrid_position.validate(); });
  checked("hybrid_angle", [&] { hybrid_angle.validate(); });
  const FuzzySystem& a = hybrid_position.fuzzy;
  const FuzzySystem& b = hybrid_angle.fuzzy;
  if (a.input1_terms != b.input1_terms || a.input2_terms != b.input2_terms || a.rule_table != b.rule_table ||
      a.output_centers != b.output_centers) {
    throw ConfigError("fuzzy: hybrid channels must share terms, rules and output centers");
  }
}

Scenario default_scenario(ControllerKind controller, Task task, Condition condition) {
  Scenario s;
  s.controller = controller;
  s.task = task_for(controller, task);
  s.condition = condition;
  s.name = fmt::format("{}-{}-{}", to_string(s.task), to_string(condition), to_string(controller));

  const bool cart = s.task == Task::cart_position;
  s.sim.reference = {cart ? 1.0 : 0.3, 0.0};
  if (condition == Condition::disturbance) s.sim.disturbance.kind = DisturbanceKind::uniform_noise;
  if (condition == Condition::parameter_variation) {
    if (cart) {
      s.variation.cart_mass_multiplier = 1.2;
    } else {
      s.variation.cart_mass_multiplier = 1.15;
      s.variation.pendulum_length_multiplier = 1.05;
    }
  }

  if (cart) {
    s.hybrid_position = hybrid_channel(s.pid_position, 1.0, 1.0, 20.0);
    s.hybrid_position.channel_gains = PidGains{4.0, 0.0, 0.1, s.pid_position.derivative_filter_tau_s};
  } else {
    s.hybrid_position = hybrid_channel(s.pid_sim_position, 1.0, 1.0, 160.0);
    s.hybrid_position.channel_gains = PidGains{270.0 / 160.0, 0.0, 140.0 / 160.0,
                                               s.pid_sim_position.derivative_filter_tau_s};
  }
  s.hybrid_angle = hybrid_channel(s.pid_angle, 1.0, 1.0, 160.0);
  s.hybrid_angle.channel_gains = PidGains{231.0 / 160.0, 0.0, 61.0 / 160.0, s.pid_angle.derivative_filter_tau_s};
  return s;
}

Scenario parse_scenario(std::string_view text) {
  ptree root;
  {
    std::istringstream in{std::string(text)};
    try {
      boost::property_tree::ini_parser::read_ini(in, root);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ConfigError(fmt::format("line {}: {}", e.line(), e.message()));
    }
  }

  ptree meta;
  std::map<std::string, const ptree*> sections;
  for (const auto& [key, child] : root) {
    if (child.empty()) {
      meta.put_child(ptree::path_type(key, '\0'), child);
    } else {
      sections[key] = &child;
    }
  }
  if (auto it = sections.find("scenario"); it != sections.end()) {
    for (const auto& [key, child] : *it->second) {
      if (meta.find(key) != meta.not_found()) {
        throw ConfigError(fmt::format("scenario.{}: given both at top level and in [scenario]", key));
      }
      meta.put_child(ptree::path_type(key, '\0'), child);
    }
    sections.erase(it);
  }
  auto section = [&](const char* name) {
    const auto it = sections.find(name);
    const ptree* node = it == sections.end() ? nullptr : it->second;
    if (it != sections.end()) sections.erase(it);
    return Section(name, node);
  };

  Section head("scenario", &meta);
  const auto kind_text = head.take("controller");
  if (!kind_text) throw ConfigError("scenario.controller: missing required key");
  const ControllerKind kind = enum_from(kControllerKinds, *kind_text, "scenario.controller");
  Task task = task_for(kind, Task::cart_position);
  if (auto v = head.take("task")) task = enum_from(kTasks, *v, "scenario.task");
  Condition condition = Condition::nominal;
  if (auto v = head.take("condition")) condition = enum_from(kConditions, *v, "scenario.condition");
  if (task_for(kind, task) != task) {
    throw ConfigError(fmt::format("scenario.task: controller '{}' does not support task '{}'", to_string(kind),
                                  to_string(task)));
  }

  Scenario s = default_scenario(kind, task, condition);
  if (auto v = head.take("name")) s.name = *v;
  if (auto v = head.take("cart_topology")) {
    if (*v == "parallel") {
      s.cart_topology = CartLoopTopology::parallel;
    } else if (*v == "cascade") {
      s.cart_topology = CartLoopTopology::cascade;
    } else {
      throw ConfigError(fmt::format("scenario.cart_topology: unknown value '{}' (expected parallel, cascade)", *v));
    }
  }
  head.finish();

  {
    Section sec = section("plant");
    sec.positive("cart_mass_kg", s.plant.cart_mass_kg);
    sec.positive("bob_mass_kg", s.plant.bob_mass_kg);
    sec.positive("pendulum_length_m", s.plant.pendulum_length_m);
    sec.positive("gravity_ms2", s.plant.gravity_ms2);
    sec.positive("cart_mass_multiplier", s.variation.cart_mass_multiplier);
    sec.positive("bob_mass_multiplier", s.variation.bob_mass_multiplier);
    sec.positive("pendulum_length_multiplier", s.variation.pendulum_length_multiplier);
    sec.finish();
  }
  {
    Section sec = section("sim");
    sec.positive("dt_s", s.sim.dt_s);
    sec.positive("duration_s", s.sim.duration_s);
    sec.number("reference_m", s.sim.reference.amplitude);
    sec.number("reference_start_s", s.sim.reference.start_s);
    if (auto v = sec.take("seed")) {
      const std::string_view t = trim(*v);
      std::uint64_t seed = 0;
      const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), seed);
      if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError(fmt::format("sim.seed: expected an unsigned integer, got '{}'", t));
      }
      s.sim.seed = seed;
    }
    if (auto v = sec.take("actuator_limit_n")) {
      if (*v == "none") {
        s.sim.actuator_limit_n.reset();
      } else {
        const double limit = parse_double(*v, "sim.actuator_limit_n", false);
        if (!(limit > 0.0)) throw ConfigError("sim.actuator_limit_n: must be > 0 or 'none'");
        s.sim.actuator_limit_n = limit;
      }
    }
    sec.number("initial_theta_rad", s.sim.initial_state.theta_rad);
    sec.number("initial_theta_dot_rads", s.sim.initial_state.theta_dot_rads);
    sec.number("initial_x_m", s.sim.initial_state.x_m);
    sec.number("initial_x_dot_ms", s.sim.initial_state.x_dot_ms);
    sec.finish();
  }
  {
    Section sec = section("disturbance");
    if (auto v = sec.take("kind")) {
      if (*v == "none") {
        s.sim.disturbance.kind = DisturbanceKind::none;
      } else if (*v == "uniform_noise") {
        s.sim.disturbance.kind = DisturbanceKind::uniform_noise;
      } else {
        throw ConfigError(fmt::format("disturbance.kind: unknown value '{}' (expected none, uniform_noise)", *v));
      }
    }
    sec.nonnegative("amplitude_n", s.sim.disturbance.amplitude_n);
    sec.number("start_s", s.sim.disturbance.start_s, true);
    sec.number("end_s", s.sim.disturbance.end_s, true);
    sec.finish();
  }
  {
    Section sec = section("metrics");
    sec.positive("band_fraction", s.metrics.band_fraction);
    sec.positive("tail_fraction", s.metrics.tail_fraction);
    sec.finish();
  }
  {
    Section sec = section("lqr");
    std::array<double, 4> diag{};
    for (int i = 0; i < 4; ++i) diag[i] = s.lqr_weights.q(i, i);
    sec.numbers("q_diag", diag);
    s.lqr_weights.q = Mat4::Zero();
    for (int i = 0; i < 4; ++i) s.lqr_weights.q(i, i) = diag[i];
    sec.positive("r", s.lqr_weights.r);
    if (auto v = sec.take("tracked_output_index")) {
      const double idx = parse_double(*v, "lqr.tracked_output_index", false);
      if (idx != std::floor(idx) || idx < 0 || idx > 3) {
        throw ConfigError("lqr.tracked_output_index: must be an integer in 0..3");
      }
      s.lqr_tracked_output = static_cast<int>(idx);
    }
    sec.finish();
  }
  {
    Section sec = section("pid_position");
    parse_gains(sec, s.pid_position);
  }
  {
    Section sec = section("pid_velocity");
    parse_gains(sec, s.pid_velocity);
  }
  {
    Section sec = section("pid_angle");
    parse_gains(sec, s.pid_angle);
  }
  {
    Section sec = section("pid_sim_position");
    parse_gains(sec, s.pid_sim_position);
  }

  s.hybrid_position.gains = s.task == Task::cart_position ? s.pid_position : s.pid_sim_position;
  s.hybrid_angle.gains = s.pid_angle;
  {
    Section sec = section("fuzzy");
    FuzzySystem shape = s.hybrid_position.fuzzy;
    parse_fuzzy_shape(sec, shape);
    for (HybridChannelConfig* ch : {&s.hybrid_position, &s.hybrid_angle}) {
      const double k1 = ch->fuzzy.input_scale1, k2 = ch->fuzzy.input_scale2, ko = ch->fuzzy.output_scale;
      ch->fuzzy = shape;
      ch->fuzzy.input_scale1 = k1;
      ch->fuzzy.input_scale2 = k2;
      ch->fuzzy.output_scale = ko;
    }
  }
  {
    Section sec = section("hybrid_position");
    parse_hybrid(sec, s.hybrid_position);
  }
  {
    Section sec = section("hybrid_angle");
    parse_hybrid(sec, s.hybrid_angle);
  }

  if (!sections.empty()) throw ConfigError(fmt::format("[{}]: unknown section", sections.begin()->first));
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("{}: cannot open", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
}

std::string serialize_scenario(const Scenario& s) {
  std::string out;
  out += fmt::format("[scenario]\nname = {}\ncontroller = {}\ntask = {}\ncondition = {}\ncart_topology = {}\n",
                     s.name, to_string(s.controller), to_string(s.task), to_string(s.condition),
                     to_string(s.cart_topology));
  out += fmt::format(
      "\n[plant]\ncart_mass_kg = {}\nbob_mass_kg = {}\npendulum_length_m = {}\ngravity_ms2 = {}\n"
      "cart_mass_multiplier = {}\nbob_mass_multiplier = {}\npendulum_length_multiplier = {}\n",
      fmt_double(s.plant.cart_mass_kg), fmt_double(s.plant.bob_mass_kg), fmt_double(s.plant.pendulum_length_m),
      fmt_double(s.plant.gravity_ms2), fmt_double(s.variation.cart_mass_multiplier),
      fmt_double(s.variation.bob_mass_multiplier), fmt_double(s.variation.pendulum_length_multiplier));
  const State& x0 = s.sim.initial_state;
  out += fmt::format(
      "\n[sim]\ndt_s = {}\nduration_s = {}\nreference_m = {}\nreference_start_s = {}\nseed = {}\n"
      "actuator_limit_n = {}\ninitial_theta_rad = {}\ninitial_theta_dot_rads = {}\ninitial_x_m = {}\n"
      "initial_x_dot_ms = {}\n",
      fmt_double(s.sim.dt_s), fmt_double(s.sim.duration_s), fmt_double(s.sim.reference.amplitude),
      fmt_double(s.sim.reference.start_s), s.sim.seed,
      s.sim.actuator_limit_n ? fmt_double(*s.sim.actuator_limit_n) : std::string("none"),
      fmt_double(x0.theta_rad), fmt_double(x0.theta_dot_rads), fmt_double(x0.x_m), fmt_double(x0.x_dot_ms));
  out += fmt::format("\n[disturbance]\nkind = {}\namplitude_n = {}\nstart_s = {}\nend_s = {}\n",
                     s.sim.disturbance.kind == DisturbanceKind::none ? "none" : "uniform_noise",
                     fmt_double(s.sim.disturbance.amplitude_n), fmt_double(s.sim.disturbance.start_s),
                     fmt_double(s.sim.disturbance.end_s));
  out += fmt::format("\n[metrics]\nband_fraction = {}\ntail_fraction = {}\n", fmt_double(s.metrics.band_fraction),
                     fmt_double(s.metrics.tail_fraction));
  out += fmt::format("\n[lqr]\nq_diag = {} {} {} {}\nr = {}\ntracked_output_index = {}\n",
                     fmt_double(s.lqr_weights.q(0, 0)), fmt_double(s.lqr_weights.q(1, 1)),
                     fmt_double(s.lqr_weights.q(2, 2)), fmt_double(s.lqr_weights.q(3, 3)),
                     fmt_double(s.lqr_weights.r), s.lqr_tracked_output);
  emit_gains(out, "pid_position", s.pid_position);
  emit_gains(out, "pid_velocity", s.pid_velocity);
  emit_gains(out, "pid_angle", s.pid_angle);
  emit_gains(out, "pid_sim_position", s.pid_sim_position);

  const FuzzySystem& fs = s.hybrid_position.fuzzy;
  out += "\n[fuzzy]\n";
  for (std::size_t i = 0; i < kFuzzyTerms; ++i) {
    out += fmt::format("{} = {}\n", term_key("input1", i), format_membership(fs.input1_terms[i]));
  }
  for (std::size_t i = 0; i < kFuzzyTerms; ++i) {
    out += fmt::format("{} = {}\n", term_key("input2", i), format_membership(fs.input2_terms[i]));
  }
  for (std::size_t i = 0; i < kFuzzyTerms; ++i) {
    out += term_key("rules", i) + " =";
    for (int idx : fs.rule_table[i]) out += fmt::format(" {}", kTermLabels[idx]);
    out += '\n';
  }
  out += "output_centers =";
  for (double c : fs.output_centers) out += " " + fmt_double(c);
  out += '\n';

  emit_hybrid(out, "hybrid_position", s.hybrid_position);
  emit_hybrid(out, "hybrid_angle", s.hybrid_angle);
  return out;
}

std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> out;
  for (Task task : kTasks) {
    for (Condition condition : kConditions) {
      const bool cart = task == Task::cart_position;
      for (ControllerKind kind : {cart ? ControllerKind::hybrid : ControllerKind::hybrid_simultaneous,
                                  ControllerKind::lqr,
                                  cart ? ControllerKind::pid_position : ControllerKind::pid_simultaneous}) {
        Scenario s = default_scenario(kind, task, condition);
        if (kind == ControllerKind::lqr && condition == Condition::parameter_variation) s.sim.duration_s = 120.0;
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

std::unique_ptr<Controller> make_controller(const Scenario& s) {
  switch (s.controller) {
    case ControllerKind::pid_position:
      return std::make_unique<PidPositionController>(s.pid_position, s.pid_velocity, s.cart_topology);
    case ControllerKind::pid_simultaneous:
      return std::make_unique<PidSimultaneousController>(s.pid_angle, s.pid_sim_position);
    case ControllerKind::lqr: {
      const LqrDesign design = lqr_synthesize(linearize(s.plant), s.lqr_weights, s.lqr_tracked_output);
      return std::make_unique<LqrStateFeedback>(design.controller);
    }
    case ControllerKind::hybrid:
      return std::make_unique<HybridPositionController>(s.hybrid_position, s.pid_velocity);
    case ControllerKind::hybrid_simultaneous:
      return std::make_unique<HybridSimultaneousController>(s.hybrid_angle, s.hybrid_position);
  }
  throw std::logic_error("make_controller: unhandled controller kind");
}

}  // namespace ipend
