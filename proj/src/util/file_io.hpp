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

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

namespace ipend::util {

/// Writes bytes verbatim; returns an error message on failure.
inline std::optional<std::string> write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return path.string() + ": cannot open for writing";
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) return path.string() + ": write failed";
  return std::nullopt;
}

}  // namespace ipend::util
