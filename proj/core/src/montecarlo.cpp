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
#include <random>
#include <string>

#include "macrb/crb.hpp"
#include "macrb/errors.hpp"
#include "macrb/montecarlo.hpp"
#include "macrb/snapshots.hpp"
#include "macrb/steering.hpp"

namespace macrb
{

TargetSet draw_targets(const ScenarioConfig &scenario, Rng &rng)
{
    std::uniform_real_distribution<double> du(-scenario.u_max, scenario.u_max);
    std::uniform_real_distribution<double> dv(-scenario.v_max, scenario.v_max);
    TargetSet out;
    out.reserve(static_cast<std::size_t>(scenario.num_targets));
    while (out.size() < static_cast<std::size_t>(scenario.num_targets))
    {
        const SpatialAngle cand{du(rng), dv(rng)};
        if (cand.u * cand.u + cand.v * cand.v > 1.0)
            continue;
        bool separated = true;
        for (const auto &t : out)
            if (std::hypot(t.u - cand.u, t.v - cand.v) < kMinTargetSeparation)
                separated = false;
        if (separated)
            out.push_back(cand);
    }
    return out;
}

MonteCarloSampleSet draw_sample_set(const ScenarioConfig &scenario, std::size_t num_samples, std::uint64_t seed)
{
    scenario.validate();
    std::vector<MonteCarloSample> samples;
    samples.reserve(num_samples);
    for (std::size_t m = 0; m < num_samples; ++m)
    {
        Rng trng = make_rng(seed, Stream::targets, m);
        Rng srng = make_rng(seed, Stream::signals, m);
        MonteCarloSample s;
        s.targets = draw_targets(scenario, trng);
        s.source = equal_power_sources(scenario.num_targets, scenario.num_snapshots, scenario.signal_power, srng);
        samples.push_back(std::move(s));
    }
    return MonteCarloSampleSet(std::move(samples));
}

double expected_crb_trace(const ArrayGeometry &geometry, const MonteCarloSampleSet &samples, double noise_power,
                          double wavelength)
{
    if (samples.size() == 0)
        throw InvalidInput("Monte Carlo set is empty");
    double sum = 0.0;
    for (std::size_t m = 0; m < samples.size(); ++m)
    {
        try
        {
            sum += crb_trace(geometry, samples[m].targets, samples[m].source, noise_power, wavelength);
        }
        catch (const SingularFim &e)
        {
            throw SingularFim("sample " + std::to_string(m) + ": " + e.what(), e.first_target, e.second_target);
        }
    }
    return sum / static_cast<double>(samples.size());
}

AntennaObjective::AntennaObjective(const ArrayGeometry &geometry, int antenna, const MonteCarloSampleSet &samples,
                                   double noise_power, double wavelength)
    : antenna_(antenna), noise_power_(noise_power), wavenumber_(2.0 * pi / wavelength)
{
    if (antenna < 0 || static_cast<std::size_t>(antenna) >= geometry.size())
        throw InvalidInput("antenna index out of range");
    if (samples.size() == 0)
        throw InvalidInput("Monte Carlo set is empty");
    if (!(noise_power > 0))
        throw InvalidInput("noise power must be > 0");

    partial_.reserve(samples.size());
    for (const auto &s : samples.samples())
    {
        if (s.targets.empty() || geometry.size() <= s.targets.size())
            throw InvalidInput("CRB needs 1 <= K < N");
        const CMatrix a = steering_matrix(geometry, s.targets, wavelength);
        const auto k = a.cols();
        PartialSums p;
        p.s0 = p.sx = p.sy = p.sxx = p.sxy = p.syy = CMatrix::Zero(k, k);
        for (Eigen::Index n = 0; n < a.rows(); ++n)
        {
            if (n == antenna)
                continue;
            const auto &q = geometry.positions[static_cast<std::size_t>(n)];
            const CMatrix outer = a.row(n).adjoint() * a.row(n);
            p.s0 += outer;
            p.sx += q.x * outer;
            p.sy += q.y * outer;
            p.sxx += (q.x * q.x) * outer;
            p.sxy += (q.x * q.y) * outer;
            p.syy += (q.y * q.y) * outer;
        }
        p.source_cov = s.source * s.source.adjoint();
        p.targets = s.targets;
        partial_.push_back(std::move(p));
    }
}

double AntennaObjective::operator()(Point2 position) const
{
    const double c2 = wavenumber_ * wavenumber_;
    double sum = 0.0;
    for (const auto &p : partial_)
    {
        const auto k = static_cast<Eigen::Index>(p.targets.size());
        CVector row(k);
        for (Eigen::Index i = 0; i < k; ++i)
        {
            const auto &t = p.targets[static_cast<std::size_t>(i)];
            row(i) = std::polar(1.0, wavenumber_ * (position.x * t.u + position.y * t.v));
        }
        const CMatrix outer = row.conjugate() * row.transpose();
        const CMatrix s0 = p.s0 + outer;
        const CMatrix sx = p.sx + position.x * outer;
        const CMatrix sy = p.sy + position.y * outer;

        Eigen::LLT<CMatrix> llt(s0);
        if (llt.info() != Eigen::Success || !(llt.rcond() >= 1.0 / kConditionLimit))
        {
            const auto [a, b] = closest_target_pair(p.targets);
            throw SingularFim("steering matrix is rank deficient", a, b);
        }
        const CMatrix gx = llt.solve(sx);
        const CMatrix gy = llt.solve(sy);
        const CMatrix uu = c2 * (p.sxx + (position.x * position.x) * outer - sx * gx);
        const CMatrix uv = c2 * (p.sxy + (position.x * position.y) * outer - sx * gy);
        const CMatrix vu = c2 * (p.sxy + (position.x * position.y) * outer - sy * gx);
        const CMatrix vv = c2 * (p.syy + (position.y * position.y) * outer - sy * gy);
        const RMatrix info = hadamard_information(p.source_cov, uu, uv, vu, vv);
        sum += (noise_power_ / 2.0) * invert_information(info, p.targets).trace();
    }
    return sum / static_cast<double>(partial_.size());
}

} // namespace macrb
