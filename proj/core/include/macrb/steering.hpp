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

#include "macrb/types.hpp"

namespace macrb
{

/// Far-field array response: entry n is exp(j (2 pi / lambda) (x_n u + y_n v)).
/// Throws InvalidInput on non-finite positions or angle, or lambda <= 0.
CVector steering_vector(const ArrayGeometry &geometry, SpatialAngle angle, double wavelength);

struct SteeringDerivatives
{
    CVector du; // d a / d u, entry n = j (2 pi / lambda) x_n a_n
    CVector dv; // d a / d v, entry n = j (2 pi / lambda) y_n a_n
};

SteeringDerivatives steering_derivatives(const ArrayGeometry &geometry, SpatialAngle angle, double wavelength);

/// N x K matrix whose columns are the steering vectors of `targets`.
CMatrix steering_matrix(const ArrayGeometry &geometry, const TargetSet &targets, double wavelength);

/// Derivative matrices (N x K each), column k differentiated w.r.t. u_k or v_k.
struct DerivativeMatrices
{
    CMatrix du;
    CMatrix dv;
};

DerivativeMatrices derivative_matrices(const ArrayGeometry &geometry, const TargetSet &targets, double wavelength);

} // namespace macrb
