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


#include <algorithm>
#include <cmath>

#include "macrb/bounds.hpp"
#include "macrb/crb.hpp"
#include "macrb/errors.hpp"
#include "macrb/geometry.hpp"
#include "macrb/steering.hpp"

namespace macrb
{

double region_bound(const ScenarioConfig &s)
{
    return s.num_targets * s.noise_power * s.wavelength * s.wavelength /
           (s.num_antennas * static_cast<double>(s.num_snapshots) * s.signal_power * s.region_size * s.region_size *
            pi * pi);
}

BoundReport lower_bound(const ArrayGeometry &geometry, const ScenarioConfig &s)
{
    const auto m = geometry_moments(geometry);
    const double spread = m.var_x + m.var_y;
    if (!(m.var_x > 0) || !(m.var_y > 0))
        throw DegenerateGeometry("antenna coordinates have zero variance along an axis");
    const double dx = m.var_x - m.cov_xy * m.cov_xy / m.var_y;
    const double dy = m.var_y - m.cov_xy * m.cov_xy / m.var_x;
    if (!(dx > 1e-12 * spread) || !(dy > 1e-12 * spread))
        throw DegenerateGeometry("antenna coordinates are collinear");

    const double n = static_cast<double>(geometry.size());
    BoundReport r;
    r.bound_a = s.num_targets * s.noise_power * s.wavelength * s.wavelength /
                (8.0 * n * s.num_snapshots * s.signal_power * pi * pi) * (1.0 / dx + 1.0 / dy);
    r.bound_b = s.num_targets * s.noise_power * s.wavelength * s.wavelength /
                (n * s.num_snapshots * s.signal_power * s.region_size * s.region_size * pi * pi);
    return r;
}

BoundReport check_bound_conditions(const ArrayGeometry &geometry, const TargetSet &targets, const CMatrix &source,
                                   double wavelength)
{
    if (source.rows() != static_cast<Eigen::Index>(targets.size()))
        throw InvalidInput("source matrix must have one row per target");

    BoundReport r;
    r.sensitivity = sensitivity_diagnostics(geometry, targets, wavelength);

    const auto kk = static_cast<Eigen::Index>(targets.size());
    const auto n = static_cast<Eigen::Index>(geometry.size());
    const CMatrix a = steering_matrix(geometry, targets, wavelength);
    const auto d = derivative_matrices(geometry, targets, wavelength);
    const CMatrix proj = orthogonal_projector(a);
    const CMatrix rt = (source * source.adjoint()).transpose();
    const CMatrix *dd[2] = {&d.du, &d.dv};

    // Cross-target coupling of the sensitivity vectors, weighted by the waveform correlation.
    double coupling = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
        {
            const CMatrix c = dd[i]->adjoint() * proj * *dd[j];
            for (Eigen::Index k = 0; k < kk; ++k)
                for (Eigen::Index k2 = 0; k2 < kk; ++k2)
                    if (k != k2)
                        coupling = std::max(coupling, std::abs((rt(k, k2) * c(k, k2)).real()));
        }

    // Per target: the residual of the own-axis-decorrelated derivative, seen by the
    // other steering vectors after projecting out a_k.
    double leakage = 0.0;
    for (Eigen::Index k = 0; k < kk; ++k)
    {
        const CVector ak = a.col(k);
        const CMatrix pk = CMatrix::Identity(n, n) - ak * ak.adjoint() / ak.squaredNorm();
        const CVector pdu = pk * d.du.col(k);
        const CVector pdv = pk * d.dv.col(k);
        const double cross = pdu.dot(pdv).real(); // Re{adot_u^H Pi_k adot_v}
        const CVector *pd[2] = {&pdu, &pdv};
        for (int i = 0; i < 2; ++i)
        {
            const int j = 1 - i;
            const double zeta = cross / pd[j]->squaredNorm();
            const CVector resid = a.adjoint() * (*pd[i] - zeta * *pd[j]);
            leakage = std::max(leakage, resid.cwiseAbs().maxCoeff());
        }
    }
    r.condition_a_residuals = {coupling, leakage};

    const auto m = geometry_moments(geometry);
    double ring = 0.0;
    const double half_a2 = geometry.region_size * geometry.region_size / 2.0;
    for (const auto &p : geometry.positions)
        ring = std::max(ring, std::abs(p.squared_norm() - half_a2));
    r.condition_b_residuals = {std::abs(m.cov_xy), std::abs(m.var_x - m.var_y),
                               std::max(std::abs(m.mean_x), std::abs(m.mean_y)), ring};
    return r;
}

} // namespace macrb
