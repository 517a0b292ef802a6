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
#include <vector>

#include "macrb/types.hpp"

namespace macrb
{

struct GeometryViolation
{
    enum class Kind
    {
        outside_region,
        too_close,
    };

    Kind kind;
    int first;       // antenna index
    int second;      // other antenna for too_close, -1 otherwise
    double value;    // offending distance, or the largest |coordinate| for outside_region

    std::string describe() const;
};

/// Every antenna outside [-A/2, A/2]^2 and every pair closer than d_min.
/// Never throws.
std::vector<GeometryViolation> validate_geometry(const ArrayGeometry &geometry);

/// True when `candidate` keeps d_min to every antenna except `skip`.
bool respects_spacing(const ArrayGeometry &geometry, Point2 candidate, int skip);

/// Population moments of the antenna coordinates (divide by N).
struct GeometryMoments
{
    double mean_x = 0;
    double mean_y = 0;
    double var_x = 0;
    double var_y = 0;
    double cov_xy = 0;
};

GeometryMoments geometry_moments(const ArrayGeometry &geometry);

double mean_distance_from_origin(const ArrayGeometry &geometry);

/// CSV with header `n,x,y`, meters, one row per antenna (n is 0-based).
void write_geometry_csv(const ArrayGeometry &geometry, const std::filesystem::path &path);
ArrayGeometry read_geometry_csv(const std::filesystem::path &path, double region_size, double min_spacing);

} // namespace macrb
