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
#include <limits>

#include "macrb/crb.hpp"
#include "macrb/errors.hpp"
#include "macrb/sensitivity.hpp"
#include "macrb/steering.hpp"

namespace macrb
{

SensitivityDiagnostics sensitivity_diagnostics(const ArrayGeometry &geometry, const TargetSet &targets,
                                               double wavelength)
{
    if (targets.empty() || geometry.size() <= targets.size())
        throw InvalidInput("sensitivity diagnostics need 1 <= K < N");
    const auto kk = static_cast<int>(targets.size());
    const CMatrix a = steering_matrix(geometry, targets, wavelength);
    const auto d = derivative_matrices(geometry, targets, wavelength);
    CMatrix proj;
    try
    {
        proj = orthogonal_projector(a);
    }
    catch (const SingularFim &)
    {
        const auto [p, q] = closest_target_pair(targets);
        throw SingularFim("steering matrix is rank deficient", p, q);
    }

    const CMatrix pu = proj * d.du;
    const CMatrix pv = proj * d.dv;
    // Pi is a Hermitian idempotent, so adot_i^H Pi adot_j = (Pi adot_i)^H (Pi adot_j).
    const CMatrix c[2][2] = {{pu.adjoint() * pu, pu.adjoint() * pv}, {pv.adjoint() * pu, pv.adjoint() * pv}};

    double scale = 0.0;
    for (const auto &p : geometry.positions)
        scale += p.squared_norm();
    scale *= std::pow(2.0 * pi / wavelength, 2);
    const double floor = 1e-20 * scale;

    std::vector<double> norms[2] = {std::vector<double>(static_cast<std::size_t>(kk)),
                                    std::vector<double>(static_cast<std::size_t>(kk))};
    for (int k = 0; k < kk; ++k)
        for (int i = 0; i < 2; ++i)
        {
            const double nrm = c[i][i](k, k).real();
            if (!(nrm > floor))
                throw DegenerateGeometry("projected steering derivative has zero norm (degenerate axis)");
            norms[i][static_cast<std::size_t>(k)] = nrm;
        }

    SensitivityDiagnostics out;
    out.num_targets = kk;
    out.rho_values.assign(static_cast<std::size_t>(kk * kk * 4), std::numeric_limits<double>::quiet_NaN());
    double rho_sum = 0.0;
    for (int k = 0; k < kk; ++k)
        for (int k2 = 0; k2 < kk; ++k2)
        {
            if (k == k2)
                continue;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                {
                    const double num = std::norm(c[i][j](k, k2));
                    const double rho = std::clamp(
                        num / (norms[i][static_cast<std::size_t>(k)] * norms[j][static_cast<std::size_t>(k2)]), 0.0,
                        1.0);
                    out.rho_values[static_cast<std::size_t>(((k * kk + k2) * 2 + i) * 2 + j)] = rho;
                    rho_sum += rho;
                }
        }
    out.rho_mean = kk > 1 ? rho_sum / (4.0 * kk * (kk - 1)) : 0.0;

    double omega_sum = 0.0;
    for (int k = 0; k < kk; ++k)
    {
        const auto ks = static_cast<std::size_t>(k);
        const double cross = c[0][1](k, k).real();
        const double wu = std::max(0.0, norms[0][ks] - cross * cross / norms[1][ks]);
        const double wv = std::max(0.0, norms[1][ks] - cross * cross / norms[0][ks]);
        out.omega_u.push_back(wu);
        out.omega_v.push_back(wv);
        omega_sum += wu + wv;
    }
    out.omega_mean = omega_sum / (2.0 * kk);
    return out;
}

AngleGrid AngleGrid::uniform(double u_max, double v_max, int nu, int nv)
{
    if (nu < 1 || nv < 1)
        throw InvalidInput("grid needs at least one point per axis");
    auto axis = [](double half, int n)
    {
        std::vector<double> out(static_cast<std::size_t>(n), 0.0);
        if (n == 1)
            return out;
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] = half * static_cast<double>(2 * i - (n - 1)) / static_cast<double>(n - 1);
        return out;
    };
    return {axis(u_max, nu), axis(v_max, nv)};
}

GridValues steering_correlation_map(const ArrayGeometry &geometry, SpatialAngle reference, const AngleGrid &grid,
                                    double wavelength)
{
    const CVector ref = steering_vector(geometry, reference, wavelength);
    const auto n = static_cast<Eigen::Index>(geometry.size());
    const double k = 2.0 * pi / wavelength;
    const auto nu = static_cast<Eigen::Index>(grid.u.size());
    const auto nv = static_cast<Eigen::Index>(grid.v.size());

    // a_n(u, v) = exp(j k x_n u) exp(j k y_n v), so a_ref^H a(u_i, v_j) = (Ex Ey^T)(i, j).
    CMatrix ex(nu, n), ey(nv, n);
    for (Eigen::Index c = 0; c < n; ++c)
    {
        const auto &p = geometry.positions[static_cast<std::size_t>(c)];
        for (Eigen::Index i = 0; i < nu; ++i)
            ex(i, c) = std::conj(ref(c)) * std::polar(1.0, k * p.x * grid.u[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < nv; ++j)
            ey(j, c) = std::polar(1.0, k * p.y * grid.v[static_cast<std::size_t>(j)]);
    }
    const CMatrix inner = ex * ey.transpose();
    GridValues out{grid, RMatrix(nu, nv)};
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    for (Eigen::Index i = 0; i < nu; ++i)
        for (Eigen::Index j = 0; j < nv; ++j)
            out.values(i, j) = std::clamp(std::norm(inner(i, j)) / n2, 0.0, 1.0);
    return out;
}

} // namespace macrb
