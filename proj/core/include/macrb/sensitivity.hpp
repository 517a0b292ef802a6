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

#include <vector>

#include "macrb/types.hpp"

namespace macrb
{

enum class Axis : int
{
    u = 0,
    v = 1,
};

/// Sensitivity vectors are Pi_A^perp adot_{u|v}(r_k).
///
/// rho(k, k', i, j) = |adot_i(k)^H Pi adot_j(k')|^2 / (||Pi adot_i(k)||^2 ||Pi adot_j(k')||^2)
/// is the normalized correlation between targets k != k'; omega_u[k] and
/// omega_v[k] are the effective powers once the own-target cross axis is
/// projected out.
struct SensitivityDiagnostics
{
    int num_targets = 0;
    std::vector<double> rho_values; // K * K * 4, row-major in (k, k', i, j); NaN on k == k'
    std::vector<double> omega_u;
    std::vector<double> omega_v;

    /// Mean of rho over ordered pairs k != k' and all four axis pairs; 0 when K == 1.
    double rho_mean = 0.0;
    /// Mean of all 2K omega values.
    double omega_mean = 0.0;

    double rho(int k, int k2, Axis i, Axis j) const
    {
        return rho_values[((static_cast<std::size_t>(k) * num_targets + k2) * 2 + static_cast<int>(i)) * 2 +
                          static_cast<int>(j)];
    }
};

/// Throws DegenerateGeometry when a projected derivative has zero norm,
/// SingularFim when A^H A is singular.
SensitivityDiagnostics sensitivity_diagnostics(const ArrayGeometry &geometry, const TargetSet &targets,
                                               double wavelength);

/// Regular grid over [-u_max, u_max] x [-v_max, v_max].
struct AngleGrid
{
    std::vector<double> u;
    std::vector<double> v;

    static AngleGrid uniform(double u_max, double v_max, int nu, int nv);
    std::size_t size() const { return u.size() * v.size(); }
};

/// values(i, j) at (u[i], v[j]).
struct GridValues
{
    AngleGrid grid;
    RMatrix values;
};

/// (1/N^2) |a(reference)^H a(r)|^2 over the grid.
GridValues steering_correlation_map(const ArrayGeometry &geometry, SpatialAngle reference, const AngleGrid &grid,
                                    double wavelength);

} // namespace macrb
