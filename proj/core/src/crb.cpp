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


#include <cmath>
#include <limits>
#include <sstream>

#include "macrb/crb.hpp"
#include "macrb/errors.hpp"
#include "macrb/steering.hpp"

namespace macrb
{

namespace
{

[[noreturn]] void throw_singular(const char *what, const TargetSet &targets)
{
    const auto [a, b] = closest_target_pair(targets);
    std::ostringstream os;
    os << what;
    if (a >= 0)
    {
        const auto &ta = targets[static_cast<std::size_t>(a)];
        const auto &tb = targets[static_cast<std::size_t>(b)];
        os << "; closest targets " << a << " (" << ta.u << ", " << ta.v << ") and " << b << " (" << tb.u << ", "
           << tb.v << ")";
    }
    throw SingularFim(os.str(), a, b);
}

CMatrix projector_or_throw(const CMatrix &steering, const TargetSet &targets)
{
    try
    {
        return orthogonal_projector(steering);
    }
    catch (const SingularFim &)
    {
        throw_singular("steering matrix is rank deficient", targets);
    }
}

void check_dimensions(const ArrayGeometry &geometry, const TargetSet &targets, const CMatrix &source,
                      double noise_power)
{
    if (targets.empty())
        throw InvalidInput("CRB needs at least one target");
    if (geometry.size() <= targets.size())
        throw InvalidInput("CRB needs more antennas than targets");
    if (source.rows() != static_cast<Eigen::Index>(targets.size()) || source.cols() < 1)
        throw InvalidInput("source matrix must be K x T");
    if (!(std::isfinite(noise_power) && noise_power > 0))
        throw InvalidInput("noise power must be finite and > 0");
}

CMatrix kron(const CMatrix &a, const CMatrix &b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Real 2K x 2K information matrix Re{(1_2 kron R^T) .* Adot^H Pi Adot}.
RMatrix projected_information(const ArrayGeometry &geometry, const TargetSet &targets, const CMatrix &source,
                              double wavelength)
{
    const CMatrix a = steering_matrix(geometry, targets, wavelength);
    const auto d = derivative_matrices(geometry, targets, wavelength);
    const CMatrix proj = projector_or_throw(a, targets);
    const CMatrix pu = proj * d.du;
    const CMatrix pv = proj * d.dv;
    const CMatrix r = source * source.adjoint();
    return hadamard_information(r, d.du.adjoint() * pu, d.du.adjoint() * pv, d.dv.adjoint() * pu,
                                d.dv.adjoint() * pv);
}

} // namespace

std::pair<int, int> closest_target_pair(const TargetSet &targets)
{
    std::pair<int, int> best{-1, -1};
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < targets.size(); ++i)
        for (std::size_t j = i + 1; j < targets.size(); ++j)
        {
            const double d = std::hypot(targets[i].u - targets[j].u, targets[i].v - targets[j].v);
            if (d < best_d)
            {
                best_d = d;
                best = {static_cast<int>(i), static_cast<int>(j)};
            }
        }
    return best;
}

CMatrix orthogonal_projector(const CMatrix &steering)
{
    const CMatrix gram = steering.adjoint() * steering;
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success || llt.rcond() < 1.0 / kConditionLimit)
        throw SingularFim("A^H A is numerically singular");
    const auto n = steering.rows();
    CMatrix proj = CMatrix::Identity(n, n) - steering * llt.solve(steering.adjoint());
    return (proj + proj.adjoint()) / 2.0;
}

RMatrix hadamard_information(const CMatrix &source_covariance, const CMatrix &uu, const CMatrix &uv,
                             const CMatrix &vu, const CMatrix &vv)
{
    const auto k = source_covariance.rows();
    const CMatrix rt = source_covariance.transpose();
    RMatrix j(2 * k, 2 * k);
    j.topLeftCorner(k, k) = rt.cwiseProduct(uu).real();
    j.topRightCorner(k, k) = rt.cwiseProduct(uv).real();
    j.bottomLeftCorner(k, k) = rt.cwiseProduct(vu).real();
    j.bottomRightCorner(k, k) = rt.cwiseProduct(vv).real();
    return j;
}

RMatrix invert_information(const RMatrix &information, const TargetSet &targets)
{
    const RMatrix sym = (information + information.transpose()) / 2.0;
    Eigen::LLT<RMatrix> llt(sym);
    if (llt.info() != Eigen::Success || !(llt.rcond() >= 1.0 / kConditionLimit))
        throw_singular("Fisher information is numerically singular", targets);
    RMatrix inv = llt.solve(RMatrix::Identity(sym.rows(), sym.cols()));
    return (inv + inv.transpose()) / 2.0;
}

CrbResult crb_matrix(const ArrayGeometry &geometry, const TargetSet &targets, const CMatrix &source,
                     double noise_power, double wavelength)
{
    check_dimensions(geometry, targets, source, noise_power);
    const RMatrix info = projected_information(geometry, targets, source, wavelength);

    CrbResult res;
    res.crb = (noise_power / 2.0) * invert_information(info, targets);
    res.trace = res.crb.trace();
    const auto k = static_cast<Eigen::Index>(targets.size());
    for (Eigen::Index i = 0; i < k; ++i)
        res.per_target.emplace_back(res.crb(i, i), res.crb(k + i, k + i));
    return res;
}

double crb_trace(const ArrayGeometry &geometry, const TargetSet &targets, const CMatrix &source, double noise_power,
                 double wavelength)
{
    return crb_matrix(geometry, targets, source, noise_power, wavelength).trace;
}

FimBlocks fim_blocks(const ArrayGeometry &geometry, const TargetSet &targets, const CMatrix &source,
                     double noise_power, double wavelength)
{
    check_dimensions(geometry, targets, source, noise_power);
    const auto n = static_cast<Eigen::Index>(geometry.size());
    const auto k = static_cast<Eigen::Index>(targets.size());
    const auto t = source.cols();

    FimBlocks fb;
    const CMatrix a = steering_matrix(geometry, targets, wavelength);
    const auto d = derivative_matrices(geometry, targets, wavelength);
    fb.du = d.du;
    fb.dv = d.dv;
    fb.projector = projector_or_throw(a, targets);
    fb.source_covariance = source * source.adjoint();

    // d mu / d u_k = (S^T kron I_N) vec(dA / du_k); dA/du_k has only column k.
    const CMatrix s_kron_i = kron(source.transpose(), CMatrix::Identity(n, n)); // NT x NK
    fb.d_omega.resize(n * t, 2 * k);
    for (Eigen::Index kk = 0; kk < k; ++kk)
    {
        CMatrix dau = CMatrix::Zero(n, k);
        CMatrix dav = CMatrix::Zero(n, k);
        dau.col(kk) = d.du.col(kk);
        dav.col(kk) = d.dv.col(kk);
        fb.d_omega.col(kk) = s_kron_i * dau.reshaped();
        fb.d_omega.col(k + kk) = s_kron_i * dav.reshaped();
    }

    // d mu / d Re s_k(t) = (I_T kron A) vec(E_{k,t}), and j times that for Im.
    const CMatrix i_kron_a = kron(CMatrix::Identity(t, t), a); // NT x KT
    fb.d_zeta.resize(n * t, 2 * k * t);
    for (Eigen::Index kk = 0; kk < k; ++kk)
        for (Eigen::Index tt = 0; tt < t; ++tt)
        {
            CMatrix e = CMatrix::Zero(k, t);
            e(kk, tt) = 1.0;
            const CVector col = i_kron_a * e.reshaped();
            fb.d_zeta.col(kk * t + tt) = col;
            fb.d_zeta.col(k * t + kk * t + tt) = cd(0.0, 1.0) * col;
        }

    fb.f11 = (fb.d_omega.adjoint() * fb.d_omega).real();
    fb.f12 = (fb.d_omega.adjoint() * fb.d_zeta).real();
    fb.f21 = (fb.d_zeta.adjoint() * fb.d_omega).real();
    fb.f22 = (fb.d_zeta.adjoint() * fb.d_zeta).real();

    const CMatrix pa = CMatrix::Identity(n, n) - fb.projector;
    const CMatrix &r = fb.source_covariance;
    fb.closed_form_f11 = hadamard_information(r, d.du.adjoint() * d.du, d.du.adjoint() * d.dv,
                                              d.dv.adjoint() * d.du, d.dv.adjoint() * d.dv);
    fb.closed_form_schur = hadamard_information(r, d.du.adjoint() * pa * d.du, d.du.adjoint() * pa * d.dv,
                                                d.dv.adjoint() * pa * d.du, d.dv.adjoint() * pa * d.dv);
    return fb;
}

RMatrix crb_1d(const std::vector<double> &x_positions, const std::vector<double> &u_angles, const CMatrix &source,
               double noise_power, double wavelength)
{
    ArrayGeometry line;
    for (double x : x_positions)
        line.positions.push_back({x, 0.0});
    TargetSet targets;
    for (double u : u_angles)
        targets.push_back({u, 0.0});
    check_dimensions(line, targets, source, noise_power);

    const CMatrix a = steering_matrix(line, targets, wavelength);
    const CMatrix du = derivative_matrices(line, targets, wavelength).du;
    const CMatrix proj = projector_or_throw(a, targets);
    const CMatrix r = source * source.adjoint();
    const RMatrix info = r.transpose().cwiseProduct(du.adjoint() * proj * du).real();
    return (noise_power / 2.0) * invert_information(info, targets);
}

} // namespace macrb
