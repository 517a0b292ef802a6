// SPDX-License-Identifier: Apache-2.0
//
// macrb - movable-antenna array CRB characterization and optimization
// Copyright (C) 2026 The macrb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "macrb/sensitivity.hpp"

namespace macrb
{

/// Shortest decimal form that round-trips to the same double ("nan" and
/// "inf" spelled out).
std::string format_double(double value);

/// Parses a double written by format_double (or any strtod-compatible text).
double parse_double(std::string_view text);

/// Splits one CSV line on commas; no quoting support.
std::vector<std::string> split_csv_line(std::string_view line);

/// Grid as rows `u,v,value`, u varying slowest.
void write_grid_csv(const GridValues &grid, const std::filesystem::path &path);

} // namespace macrb
