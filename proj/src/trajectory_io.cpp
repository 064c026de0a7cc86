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

#include "ipend/trajectory_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

#include <fmt/format.h>

namespace ipend {

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << kTrajectoryCsvHeader << '\n';
  fmt::memory_buffer buf;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const State& s = traj.states[k];
    buf.clear();
    fmt::format_to(std::back_inserter(buf), "{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n",
                   traj.times_s[k], s.theta_rad, s.theta_dot_rads, s.x_m, s.x_dot_ms, traj.inputs_n[k],
                   traj.references[k]);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = std::string(kTrajectoryCsvHeader) + "\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const State& s = traj.states[k];
    out += fmt::format("{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", traj.times_s[k], s.theta_rad,
                       s.theta_dot_rads, s.x_m, s.x_dot_ms, traj.inputs_n[k], traj.references[k]);
  }
  return out;
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw std::runtime_error("trajectory csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryCsvHeader) {
    throw std::runtime_error(fmt::format("trajectory csv: expected header '{}'", kTrajectoryCsvHeader));
  }
  Trajectory traj;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v[7];
    std::string_view rest(line);
    for (int c = 0; c < 7; ++c) {
      const auto comma = rest.find(',');
      const std::string_view field = rest.substr(0, comma);
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v[c]);
      if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw std::runtime_error(fmt::format("trajectory csv: bad number in column {} on line {}", c + 1, line_no));
      }
      if ((c < 6) != (comma != std::string_view::npos)) {
        throw std::runtime_error(fmt::format("trajectory csv: expected 7 columns on line {}", line_no));
      }
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (!traj.times_s.empty() && !(v[0] > traj.times_s.back())) {
      throw std::runtime_error(fmt::format("trajectory csv: time not increasing on line {}", line_no));
    }
    traj.times_s.push_back(v[0]);
    traj.states.push_back({v[1], v[2], v[3], v[4]});
    traj.inputs_n.push_back(v[5]);
    traj.references.push_back(v[6]);
  }
  return traj;
}

}  // namespace ipend
