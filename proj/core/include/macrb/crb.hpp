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

#include <utility>
#include <vector>

#include "macrb/types.hpp"

namespace macrb
{

/// Inversions whose reciprocal condition estimate falls below 1 / kConditionLimit
/// raise SingularFim instead of regularizing.
inline constexpr double kConditionLimit = 1e12;

/// CRB of the 2K spatial angles. Parameter order is (u_1..u_K, v_1..v_K); the
/// u and v entries of one target are K apart, never interleaved.
struct CrbResult
{
    RMatrix crb;                                    // 2K x 2K
    double trace = 0.0;
    std::vector<std::pair<double, double>> per_target; // (CRB(u_k), CRB(v_k))
};

/// Fisher information built the long way from the vectorized mean
/// mu = (S^T kron I_N) vec(A). The full FIM is (2 / sigma^2) [[f11, f12], [f21, f22]].
/// Unknowns are omega = (u_1..u_K, v_1..v_K) and
/// zeta = (Re s_1, .., Re s_K, Im s_1, .., Im s_K), each s_k of length T.
struct FimBlocks
{
    RMatrix f11; // 2K x 2K
    RMatrix f12; // 2K x 2KT
    RMatrix f21; // 2KT x 2K
    RMatrix f22; // 2KT x 2KT

    CMatrix d_omega; // NT x 2K
    CMatrix d_zeta;  // NT x 2KT
    CMatrix du;      // N x K
    CMatrix dv;      // N x K
    CMatrix projector; // I - A (A^H A)^-1 A^H
    CMatrix source_covariance; // R_S = S S^H

    // Hadamard forms of the same quantities:
    //   closed_form_f11    = Re{(1_2 kron R_S^T) .* Adot^H Adot}
    //   closed_form_schur  = Re{(1_2 kron R_S^T) .* Adot^H P_A Adot}, P_A = I - projector
    // which must agree with f11 and f12 f22^-1 f21 respectively.
    RMatrix closed_form_f11;
    RMatrix closed_form_schur;
};

/// I - A (A^H A)^-1 A^H. Throws SingularFim if A^H A is numerically singular.
CMatrix orthogonal_projector(const CMatrix &steering);

/// (sigma^2 / 2) (Re{(1_2 kron R_S^T) .* Adot^H Pi_A^perp Adot})^-1 with
/// R_S = S S^H and Adot = [Adot_u, Adot_v].
///
/// Throws InvalidInput on dimension mismatch or N <= K, SingularFim when the
/// information matrix is near singular (coincident targets, degenerate axis).
CrbResult crb_matrix(const ArrayGeometry &geometry, const TargetSet &targets, const CMatrix &source,
                     double noise_power, double wavelength);

/// Just the trace, skipping the per-target bookkeeping.
double crb_trace(const ArrayGeometry &geometry, const TargetSet &targets, const CMatrix &source, double noise_power,
                 double wavelength);

FimBlocks fim_blocks(const ArrayGeometry &geometry, const TargetSet &targets, const CMatrix &source,
                     double noise_power, double wavelength);

/// Linear array variant: x positions, u angles only. Returns the K x K CRB.
RMatrix crb_1d(const std::vector<double> &x_positions, const std::vector<double> &u_angles, const CMatrix &source,
               double noise_power, double wavelength);

/// Inverts a symmetric positive definite information matrix under the
/// condition guard; `targets` only feeds the error message.
RMatrix invert_information(const RMatrix &information, const TargetSet &targets);

/// Re{(1_2 kron R_S^T) .* [[uu, uv], [vu, vv]]} for K x K complex blocks.
RMatrix hadamard_information(const CMatrix &source_covariance, const CMatrix &uu, const CMatrix &uv,
                             const CMatrix &vu, const CMatrix &vv);

/// Index pair of the closest targets in (u, v), (-1, -1) if K < 2.
std::pair<int, int> closest_target_pair(const TargetSet &targets);

} // namespace macrb
