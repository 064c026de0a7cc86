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

#include <iosfwd>
#include <string>

#include "ipend/sim.hpp"

namespace ipend {

inline constexpr const char* kTrajectoryCsvHeader = "t,theta,theta_dot,x,x_dot,u,ref";

/// One row per sample, 12 significant digits.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
std::string trajectory_csv(const Trajectory& traj);

/// Parses the format written by write_trajectory_csv. Throws
/// std::runtime_error with the offending line number on malformed input.
Trajectory read_trajectory_csv(std::istream& in);

}  // namespace ipend
