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

#include <array>
#include <limits>
#include <vector>

#include "macrb/sensitivity.hpp"
#include "macrb/types.hpp"

namespace macrb
{

/// Lower bounds on the trace of the CRB under equal per-target energy, the
/// residuals of their equality conditions, and sensitivity diagnostics.
///
/// bound_a depends on the geometry through var/cov of the coordinates;
/// bound_b only on the region size. bound_a >= bound_b always.
struct BoundReport
{
    double bound_a = std::numeric_limits<double>::quiet_NaN();
    double bound_b = std::numeric_limits<double>::quiet_NaN();

    // [0]: max |Re{[R_S^T]_{k,k'} adot_i(k)^H Pi adot_j(k')}| over k != k' and i, j in {u, v}
    // [1]: max |A^H Pi_k (adot_i(k) - zeta*_{i,k} adot_j(k))| over k and i != j
    std::vector<double> condition_a_residuals;

    // |cov(x, y)|, |var(x) - var(y)|, max(|mean x|, |mean y|), max_n |x_n^2 + y_n^2 - A^2 / 2|
    std::array<double, 4> condition_b_residuals{};

    SensitivityDiagnostics sensitivity;
};

/// Closed-form bound that only needs the region size.
double region_bound(const ScenarioConfig &scenario);

/// Fills bound_a and bound_b. Throws DegenerateGeometry when a variance or
/// either Schur denominator is not positive.
BoundReport lower_bound(const ArrayGeometry &geometry, const ScenarioConfig &scenario);

/// Fills the condition residuals and sensitivity diagnostics for one realization.
BoundReport check_bound_conditions(const ArrayGeometry &geometry, const TargetSet &targets, const CMatrix &source,
                                   double wavelength);

} // namespace macrb
