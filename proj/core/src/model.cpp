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
#include <string>

#include "macrb/errors.hpp"
#include "macrb/random.hpp"
#include "macrb/snapshots.hpp"
#include "macrb/steering.hpp"
#include "macrb/types.hpp"

namespace macrb
{

void ScenarioConfig::validate() const
{
    auto require = [](bool ok, const char *what)
    {
        if (!ok)
            throw InvalidInput(std::string("ScenarioConfig: ") + what);
    };
    require(std::isfinite(wavelength) && wavelength > 0, "wavelength must be > 0");
    require(std::isfinite(region_size) && region_size > 0, "region_size must be > 0");
    require(std::isfinite(min_spacing) && min_spacing >= 0, "min_spacing must be >= 0");
    require(num_targets >= 1, "num_targets must be >= 1");
    require(num_antennas > num_targets, "num_antennas must exceed num_targets");
    require(num_snapshots >= 1, "num_snapshots must be >= 1");
    require(std::isfinite(signal_power) && signal_power > 0, "signal_power must be > 0");
    require(std::isfinite(noise_power) && noise_power > 0, "noise_power must be > 0");
    require(u_max >= 0 && u_max <= 1, "u_max must be in [0, 1]");
    require(v_max >= 0 && v_max <= 1, "v_max must be in [0, 1]");
}

Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t index, std::uint64_t sub)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32), static_cast<std::uint32_t>(sub),
                      static_cast<std::uint32_t>(sub >> 32)};
    return Rng(seq);
}

namespace
{

void check_inputs(const ArrayGeometry &geometry, double wavelength)
{
    if (!(std::isfinite(wavelength) && wavelength > 0))
        throw InvalidInput("wavelength must be finite and > 0");
    for (const auto &p : geometry.positions)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw InvalidInput("antenna position is not finite");
}

void check_angle(SpatialAngle angle)
{
    if (!std::isfinite(angle.u) || !std::isfinite(angle.v))
        throw InvalidInput("spatial angle is not finite");
}

} // namespace

CVector steering_vector(const ArrayGeometry &geometry, SpatialAngle angle, double wavelength)
{
    check_inputs(geometry, wavelength);
    check_angle(angle);
    const double k = 2.0 * pi / wavelength;
    const auto n = static_cast<Eigen::Index>(geometry.size());
    CVector a(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const auto &p = geometry.positions[static_cast<std::size_t>(i)];
        a(i) = std::polar(1.0, k * (p.x * angle.u + p.y * angle.v));
    }
    return a;
}

SteeringDerivatives steering_derivatives(const ArrayGeometry &geometry, SpatialAngle angle, double wavelength)
{
    const CVector a = steering_vector(geometry, angle, wavelength);
    const double k = 2.0 * pi / wavelength;
    SteeringDerivatives d{CVector(a.size()), CVector(a.size())};
    for (Eigen::Index i = 0; i < a.size(); ++i)
    {
        const auto &p = geometry.positions[static_cast<std::size_t>(i)];
        d.du(i) = cd(0.0, k * p.x) * a(i);
        d.dv(i) = cd(0.0, k * p.y) * a(i);
    }
    return d;
}

CMatrix steering_matrix(const ArrayGeometry &geometry, const TargetSet &targets, double wavelength)
{
    CMatrix a(static_cast<Eigen::Index>(geometry.size()), static_cast<Eigen::Index>(targets.size()));
    for (std::size_t k = 0; k < targets.size(); ++k)
        a.col(static_cast<Eigen::Index>(k)) = steering_vector(geometry, targets[k], wavelength);
    return a;
}

DerivativeMatrices derivative_matrices(const ArrayGeometry &geometry, const TargetSet &targets, double wavelength)
{
    const auto n = static_cast<Eigen::Index>(geometry.size());
    const auto kk = static_cast<Eigen::Index>(targets.size());
    DerivativeMatrices d{CMatrix(n, kk), CMatrix(n, kk)};
    for (Eigen::Index k = 0; k < kk; ++k)
    {
        auto col = steering_derivatives(geometry, targets[static_cast<std::size_t>(k)], wavelength);
        d.du.col(k) = col.du;
        d.dv.col(k) = col.dv;
    }
    return d;
}

CMatrix equal_power_sources(int num_targets, int num_snapshots, double signal_power, Rng &rng)
{
    if (num_targets < 1 || num_snapshots < 1 || !(signal_power > 0))
        throw InvalidInput("equal_power_sources: need K >= 1, T >= 1, P_s > 0");
    CMatrix s(num_targets, num_snapshots);
    for (Eigen::Index k = 0; k < s.rows(); ++k)
    {
        for (Eigen::Index t = 0; t < s.cols(); ++t)
            s(k, t) = complex_gaussian(rng, 1.0);
        const double energy = s.row(k).squaredNorm();
        s.row(k) *= std::sqrt(signal_power * static_cast<double>(num_snapshots) / energy);
    }
    return s;
}

SnapshotBundle synthesize_snapshots(const ArrayGeometry &geometry, const TargetSet &targets, SnapshotBundle bundle,
                                    double wavelength, Rng &rng)
{
    if (bundle.source.rows() != static_cast<Eigen::Index>(targets.size()) || bundle.source.cols() < 1)
        throw InvalidInput("synthesize_snapshots: source matrix must be K x T with K = |targets|, T >= 1");
    if (!(bundle.noise_power >= 0))
        throw InvalidInput("synthesize_snapshots: noise power must be >= 0");

    bundle.steering = steering_matrix(geometry, targets, wavelength);
    bundle.received = bundle.steering * bundle.source;
    if (bundle.noise_power > 0)
    {
        for (Eigen::Index t = 0; t < bundle.received.cols(); ++t)
            for (Eigen::Index n = 0; n < bundle.received.rows(); ++n)
                bundle.received(n, t) += complex_gaussian(rng, bundle.noise_power);
    }
    return bundle;
}

CMatrix sample_covariance(const CMatrix &received)
{
    if (received.size() == 0)
        throw InvalidInput("sample_covariance: empty snapshot matrix");
    CMatrix r = received * received.adjoint() / static_cast<double>(received.cols());
    for (Eigen::Index i = 0; i < r.rows(); ++i)
    {
        r(i, i) = r(i, i).real();
        for (Eigen::Index j = i + 1; j < r.cols(); ++j)
            r(j, i) = std::conj(r(i, j));
    }
    return r;
}

} // namespace macrb
