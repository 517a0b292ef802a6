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
#include <numeric>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "macrb/errors.hpp"
#include "macrb/music.hpp"

namespace macrb
{

namespace
{

// Phase factors exp(j k p u) for every (grid value, antenna) pair.
CMatrix axis_phases(const std::vector<double> &axis, const ArrayGeometry &geometry, double k, bool use_x)
{
    CMatrix out(static_cast<Eigen::Index>(axis.size()), static_cast<Eigen::Index>(geometry.size()));
    for (Eigen::Index n = 0; n < out.cols(); ++n)
    {
        const auto &p = geometry.positions[static_cast<std::size_t>(n)];
        const double coord = use_x ? p.x : p.y;
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            out(i, n) = std::polar(1.0, k * coord * axis[static_cast<std::size_t>(i)]);
    }
    return out;
}

struct Cell
{
    Eigen::Index i;
    Eigen::Index j;
    double value;
};

} // namespace

MusicSpectrum music_spectrum(const CMatrix &covariance, const ArrayGeometry &geometry, int num_targets,
                             const AngleGrid &grid, double wavelength)
{
    const auto n = static_cast<Eigen::Index>(geometry.size());
    if (covariance.rows() != n || covariance.cols() != n)
        throw InvalidInput("covariance must be N x N");
    if (num_targets < 1 || num_targets >= n)
        throw InvalidInput("MUSIC needs 1 <= K < N");
    if (grid.u.empty() || grid.v.empty())
        throw InvalidInput("empty angle grid");

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(covariance);
    if (eig.info() != Eigen::Success)
        throw InvalidInput("covariance eigendecomposition failed");
    const RVector &ev = eig.eigenvalues(); // ascending
    const CMatrix &vecs = eig.eigenvectors();
    const Eigen::Index noise_dim = n - num_targets;

    MusicSpectrum out;
    out.grid = grid;
    out.subspace_dim = static_cast<int>(noise_dim);
    const double weakest_signal = ev(noise_dim);
    const double strongest_noise = ev(noise_dim - 1);
    out.eigenvalue_tie = std::abs(weakest_signal - strongest_noise) <=
                         1e-12 * std::max({std::abs(weakest_signal), std::abs(strongest_noise),
                                           std::numeric_limits<double>::min()});

    const double k = 2.0 * pi / wavelength;
    const CMatrix ex = axis_phases(grid.u, geometry, k, true);
    const CMatrix ey = axis_phases(grid.v, geometry, k, false);
    const auto nu = ex.rows();
    const auto nv = ey.rows();

    // a^H Un Un^H a = ||Un^H a||^2, or N - ||Us^H a||^2 through the smaller signal
    // subspace (every steering entry has unit modulus). Each projection onto a basis
    // vector is separable over the grid: (Ex diag(conj(b)) Ey^T)(i, j).
    const bool via_signal = num_targets < noise_dim;
    const Eigen::Index first = via_signal ? noise_dim : 0;
    const Eigen::Index count = via_signal ? num_targets : noise_dim;
    RMatrix energy = RMatrix::Zero(nu, nv);
    for (Eigen::Index m = first; m < first + count; ++m)
    {
        const CVector b = vecs.col(m).conjugate();
        const CMatrix w = (ex * b.asDiagonal()) * ey.transpose();
        energy += w.cwiseAbs2();
    }
    out.values.resize(nu, nv);
    for (Eigen::Index i = 0; i < nu; ++i)
        for (Eigen::Index j = 0; j < nv; ++j)
        {
            const double den = via_signal ? static_cast<double>(n) - energy(i, j) : energy(i, j);
            out.values(i, j) = 1.0 / std::max(den, kSpectrumFloor);
        }
    return out;
}

PeakPicks estimate_aoas(const MusicSpectrum &spectrum, int num_targets)
{
    const RMatrix &p = spectrum.values;
    const auto nu = p.rows();
    const auto nv = p.cols();
    if (num_targets < 1 || static_cast<Eigen::Index>(num_targets) > nu * nv)
        throw InvalidInput("number of peaks must be between 1 and the grid size");
    const auto &gu = spectrum.grid.u;
    const auto &gv = spectrum.grid.v;

    auto before = [&](const Cell &a, const Cell &b)
    {
        if (a.value != b.value)
            return a.value > b.value;
        return std::tie(gu[static_cast<std::size_t>(a.i)], gv[static_cast<std::size_t>(a.j)]) <
               std::tie(gu[static_cast<std::size_t>(b.i)], gv[static_cast<std::size_t>(b.j)]);
    };

    std::vector<Cell> maxima;
    for (Eigen::Index i = 0; i < nu; ++i)
        for (Eigen::Index j = 0; j < nv; ++j)
        {
            bool strict = true;
            for (Eigen::Index di = -1; di <= 1 && strict; ++di)
                for (Eigen::Index dj = -1; dj <= 1 && strict; ++dj)
                {
                    const auto a = i + di;
                    const auto b = j + dj;
                    if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= nu || b >= nv)
                        continue;
                    strict = p(i, j) > p(a, b) * (1.0 + kPlateauTolerance);
                }
            if (strict)
                maxima.push_back({i, j, p(i, j)});
        }
    std::sort(maxima.begin(), maxima.end(), before);

    PeakPicks out;
    const auto want = static_cast<std::size_t>(num_targets);
    std::vector<Cell> chosen(maxima.begin(), maxima.begin() + static_cast<std::ptrdiff_t>(std::min(want, maxima.size())));
    if (chosen.size() < want)
    {
        out.padded = true;
        std::vector<Cell> rest;
        for (Eigen::Index i = 0; i < nu; ++i)
            for (Eigen::Index j = 0; j < nv; ++j)
                if (std::none_of(chosen.begin(), chosen.end(), [&](const Cell &c) { return c.i == i && c.j == j; }))
                    rest.push_back({i, j, p(i, j)});
        std::sort(rest.begin(), rest.end(), before);
        for (std::size_t r = 0; chosen.size() < want; ++r)
            chosen.push_back(rest[r]);
        std::sort(chosen.begin(), chosen.end(), before);
    }

    for (const auto &c : chosen)
    {
        SpatialAngle a{gu[static_cast<std::size_t>(c.i)], gv[static_cast<std::size_t>(c.j)]};
        if (c.i > 0 && c.j > 0 && c.i + 1 < nu && c.j + 1 < nv)
        {
            // Least-squares quadratic d(x, y) = c0 + c1 x + c2 y + c3 x^2 + c4 x y + c5 y^2
            // to the denominator on the 3 x 3 stencil (offsets in cells), then one Newton step.
            Eigen::Matrix<double, 9, 6> design;
            Eigen::Matrix<double, 9, 1> rhs;
            int row = 0;
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy, ++row)
                {
                    design.row(row) << 1.0, dx, dy, dx * dx, dx * dy, dy * dy;
                    rhs(row) = 1.0 / p(c.i + dx, c.j + dy);
                }
            const Eigen::Matrix<double, 6, 1> coef = design.colPivHouseholderQr().solve(rhs);
            Eigen::Matrix2d hess;
            hess << 2.0 * coef(3), coef(4), coef(4), 2.0 * coef(5);
            const Eigen::Vector2d grad(coef(1), coef(2));
            if (hess.determinant() > 0 && hess(0, 0) > 0)
            {
                const Eigen::Vector2d delta = -hess.inverse() * grad;
                if (std::abs(delta(0)) <= 1.0 && std::abs(delta(1)) <= 1.0)
                {
                    const double step_u = gu[static_cast<std::size_t>(c.i + 1)] - gu[static_cast<std::size_t>(c.i)];
                    const double step_v = gv[static_cast<std::size_t>(c.j + 1)] - gv[static_cast<std::size_t>(c.j)];
                    a.u += delta(0) * step_u;
                    a.v += delta(1) * step_v;
                }
            }
        }
        out.angles.push_back(a);
    }
    return out;
}

EstimationResult score_estimates(const TargetSet &truth, const std::vector<SpatialAngle> &estimates)
{
    if (truth.size() != estimates.size())
        throw InvalidInput("estimate count differs from target count");
    const std::size_t k = truth.size();
    auto sq = [&](std::size_t t, std::size_t e)
    {
        const double du = truth[t].u - estimates[e].u;
        const double dv = truth[t].v - estimates[e].v;
        return du * du + dv * dv;
    };

    std::vector<std::size_t> match(k);
    std::iota(match.begin(), match.end(), 0);
    if (k <= 7)
    {
        std::vector<std::size_t> perm = match;
        double best = std::numeric_limits<double>::infinity();
        do
        {
            double total = 0.0;
            for (std::size_t t = 0; t < k; ++t)
                total += sq(t, perm[t]);
            if (total < best)
            {
                best = total;
                match = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    else
    {
        std::vector<bool> used_t(k, false), used_e(k, false);
        for (std::size_t round = 0; round < k; ++round)
        {
            double best = std::numeric_limits<double>::infinity();
            std::size_t bt = 0, be = 0;
            for (std::size_t t = 0; t < k; ++t)
                for (std::size_t e = 0; e < k; ++e)
                    if (!used_t[t] && !used_e[e] && sq(t, e) < best)
                    {
                        best = sq(t, e);
                        bt = t;
                        be = e;
                    }
            used_t[bt] = used_e[be] = true;
            match[bt] = be;
        }
    }

    EstimationResult r;
    for (std::size_t t = 0; t < k; ++t)
    {
        r.estimated.push_back(estimates[match[t]]);
        r.per_target_sq_errors.push_back(sq(t, match[t]));
        r.total_sq_error += r.per_target_sq_errors.back();
    }
    return r;
}

double evaluate_mse(std::span<const EstimationResult> trials)
{
    if (trials.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto &t : trials)
        sum += t.total_sq_error;
    return sum / static_cast<double>(trials.size());
}

double evaluate_mse(std::span<const TargetSet> truths, std::span<const std::vector<SpatialAngle>> estimates)
{
    if (truths.size() != estimates.size())
        throw InvalidInput("trial counts differ");
    std::vector<EstimationResult> scored;
    scored.reserve(truths.size());
    for (std::size_t i = 0; i < truths.size(); ++i)
        scored.push_back(score_estimates(truths[i], estimates[i]));
    return evaluate_mse(scored);
}

} // namespace macrb
