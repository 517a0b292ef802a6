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


#include <catch_amalgamated.hpp>

#include "macrb/baselines.hpp"
#include "macrb/bounds.hpp"
#include "macrb/crb.hpp"
#include "macrb/errors.hpp"
#include "support.hpp"

using namespace macrb;
using Catch::Approx;

namespace
{

ArrayGeometry circle(int n, double region)
{
    ArrayGeometry g{{}, region, 0};
    const double r = region / std::sqrt(2.0);
    for (int i = 0; i < n; ++i)
        g.positions.push_back({r * std::cos(2 * pi * i / n), r * std::sin(2 * pi * i / n)});
    return g;
}

} // namespace

TEST_CASE("region bound at the default scenario")
{
    ScenarioConfig s; // K=5, N=16, T=64, A=12 lambda, 10 dB
    // 5 * 0.1 * lambda^2 / (16 * 64 * 1 * (12 lambda)^2 * pi^2) = 0.5 / (147456 pi^2)
    const double hand = 0.5 / (147456.0 * pi * pi);
    CHECK(region_bound(s) == Approx(hand).epsilon(1e-14));
    CHECK(region_bound(s) == Approx(3.4357e-7).epsilon(1e-4));

    ScenarioConfig wide = s;
    wide.region_size *= 2;
    CHECK(region_bound(wide) == Approx(region_bound(s) / 4).epsilon(1e-14));
}

TEST_CASE("bound chain holds on random instances")
{
    Rng rng = make_rng(51, Stream::targets);
    ScenarioConfig s;
    s.num_antennas = 8;
    s.num_targets = 3;
    s.num_snapshots = 16;
    for (int trial = 0; trial < 50; ++trial)
    {
        auto g = testing::random_geometry(8, s.region_size, s.min_spacing, rng);
        const auto targets = testing::random_targets(3, 0.6, rng);
        Rng sr = make_rng(51, Stream::signals, static_cast<std::uint64_t>(trial));
        const CMatrix src = equal_power_sources(3, 16, s.signal_power, sr);
        const double tr = crb_trace(g, targets, src, s.noise_power, s.wavelength);
        const auto b = lower_bound(g, s);
        CHECK(tr >= b.bound_a);
        CHECK(b.bound_a >= b.bound_b);
    }
}

TEST_CASE("uniform circular array meets the region bound")
{
    ScenarioConfig s;
    for (int n : {6, 8, 16})
    {
        s.num_antennas = n;
        const auto g = circle(n, s.region_size);
        const auto b = lower_bound(g, s);
        CHECK(b.bound_a == Approx(b.bound_b).epsilon(1e-12));
        const TargetSet t{{0.1, 0.2}, {-0.3, 0.3}};
        Rng sr = make_rng(1, Stream::signals);
        const auto r = check_bound_conditions(g, t, equal_power_sources(2, 8, 1.0, sr), s.wavelength);
        for (double res : r.condition_b_residuals)
            CHECK(res < 1e-12 * s.region_size * s.region_size);
    }
}

TEST_CASE("condition residuals")
{
    ScenarioConfig s;
    const auto upa = dense_upa(s);
    Rng sr = make_rng(1, Stream::signals);
    const TargetSet one{{0.2, -0.1}};
    const auto r1 = check_bound_conditions(upa, one, equal_power_sources(1, 8, 1.0, sr), s.wavelength);
    REQUIRE(r1.condition_a_residuals.size() == 2);
    CHECK(r1.condition_a_residuals[0] == 0.0);
    // Antennas hug the center: |x^2 + y^2 - A^2 / 2| is close to A^2 / 2.
    CHECK(r1.condition_b_residuals[3] > 0.95 * s.region_size * s.region_size / 2);

    // K = 1 meets bound (a) with equality, and its leakage residual vanishes.
    CHECK(r1.condition_a_residuals[1] < 1e-9);
}

TEST_CASE("degenerate geometries")
{
    ScenarioConfig s;
    s.num_antennas = 4;
    s.num_targets = 1;
    const ArrayGeometry line{{{-0.1, -0.1}, {0, 0}, {0.1, 0.1}, {0.2, 0.2}}, s.region_size, 0};
    CHECK_THROWS_AS(lower_bound(line, s), DegenerateGeometry);
    const ArrayGeometry flat{{{-0.1, 0.05}, {0, 0.05}, {0.1, 0.05}, {0.2, 0.05}}, s.region_size, 0};
    CHECK_THROWS_AS(lower_bound(flat, s), DegenerateGeometry);
}
