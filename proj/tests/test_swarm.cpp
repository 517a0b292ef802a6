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
#include "macrb/errors.hpp"
#include "macrb/geometry.hpp"
#include "macrb/montecarlo.hpp"
#include "macrb/swarm.hpp"

using namespace macrb;
using Catch::Approx;

namespace
{

const FeasibilityCheck anywhere = [](Point2) { return true; };

SwarmParams plain_params()
{
    SwarmParams p;
    p.max_step = 0.1;
    p.gradient_step = 1e-5;
    return p;
}

} // namespace

TEST_CASE("projection onto the region")
{
    const double a = 2.0;
    CHECK(project_to_region({0.3, -0.2}, a) == Point2{0.3, -0.2});
    CHECK(project_to_region({a, -a}, a) == Point2{a / 2, -a / 2});
    CHECK(project_to_region({-a / 2, 0}, a) == Point2{-a / 2, 0});
}

TEST_CASE("numeric gradient")
{
    const ScalarObjective quad = [](Point2 p) { return p.squared_norm(); };
    const Point2 g = numeric_gradient(quad, {0.2, -0.3}, 1e-5, 2.0);
    CHECK(g.x == Approx(0.4).margin(1e-8));
    CHECK(g.y == Approx(-0.6).margin(1e-8));

    const ScalarObjective flat = [](Point2) { return 3.0; };
    CHECK(numeric_gradient(flat, {0.1, 0.1}, 1e-5, 2.0) == Point2{0, 0});

    // On the boundary the inward one-sided difference is used (truncation error = step).
    const Point2 edge = numeric_gradient(quad, {1.0, -1.0}, 1e-5, 2.0);
    CHECK(edge.x == Approx(2.0).margin(2e-5));
    CHECK(edge.y == Approx(-2.0).margin(2e-5));

    const ScalarObjective broken = [](Point2 p) -> double
    {
        if (p.x > 0.1)
            throw SingularFim("probe");
        return 0.0;
    };
    CHECK_THROWS_AS(numeric_gradient(broken, {0.1, 0}, 1e-5, 2.0), GradientError);
}

TEST_CASE("gradient of the expected CRB is step-consistent")
{
    ScenarioConfig sc;
    sc.num_antennas = 9;
    sc.num_targets = 3;
    sc.num_snapshots = 8;
    const auto samples = draw_sample_set(sc, 10, 3);
    const auto g = full_aperture_upa(sc);
    const AntennaObjective obj(g, 4, samples, sc.noise_power, sc.wavelength);
    const ScalarObjective f = [&](Point2 p) { return obj(p); };
    const double d = 1e-4 * sc.wavelength;
    const Point2 at{0.013, -0.021};
    const Point2 g1 = numeric_gradient(f, at, d, sc.region_size);
    const Point2 g2 = numeric_gradient(f, at, d / 2, sc.region_size);
    CHECK((g1 - g2).norm() <= 1e-3 * g2.norm());
}

TEST_CASE("mass update")
{
    std::vector<SwarmAgent> swarm(5);
    const double values[5] = {3.0, 1.0, 2.0, 5.0, 1.5};
    for (int i = 0; i < 5; ++i)
        swarm[static_cast<std::size_t>(i)] = {{0, 0}, 0.2, 1.0, values[i]};
    update_masses(swarm, 2.0);
    CHECK(swarm[3].mass == 0.0); // kappa = 1 at psi_max
    CHECK(swarm[2].mass == Approx(0.2 * (1 - std::pow(0.25, 2))));
    double total = 0;
    for (const auto &a : swarm)
        total += a.mass;
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(swarm[1].relative_mass == 1.0);
    CHECK(swarm[1].mass > 0.2);

    std::vector<SwarmAgent> flat(3, SwarmAgent{{0, 0}, 1.0 / 3, 1.0, 2.0});
    update_masses(flat, 2.0);
    for (const auto &a : flat)
        CHECK(a.mass == 1.0 / 3);

    Rng rng = make_rng(1, Stream::agents);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<SwarmAgent> many(25);
    for (auto &a : many)
        a = {{0, 0}, 1.0 / 25, 1.0, u(rng)};
    for (int it = 0; it < 50; ++it)
    {
        for (auto &a : many)
            a.value = u(rng);
        update_masses(many, 2.0);
        double sum = 0;
        for (const auto &a : many)
            sum += a.mass;
        REQUIRE(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("backtracking step")
{
    const auto params = plain_params();
    const ScalarObjective quad = [](Point2 p) { return p.squared_norm(); };

    SwarmAgent at_min{{0, 0}, 1, 1, 0};
    const auto zero = backtracking_step(at_min, {0, 0}, quad, anywhere, 2.0, params);
    CHECK_FALSE(zero.stalled);
    CHECK(zero.position == Point2{0, 0});

    SwarmAgent agent{{0.3, -0.2}, 1, 1, quad({0.3, -0.2})};
    const auto step = backtracking_step(agent, {0.6, -0.4}, quad, anywhere, 2.0, params);
    CHECK_FALSE(step.stalled);
    CHECK(step.value < agent.value);

    // A fixed neighbor at d_min + tau_max / 2 along the descent direction.
    SwarmParams p = params;
    const double d_min = 0.2;
    const Point2 neighbor{d_min + p.max_step / 2, 0};
    const ScalarObjective slope = [](Point2 q) { return -q.x; };
    const FeasibilityCheck spaced = [&](Point2 q) { return distance(q, neighbor) >= d_min; };
    SwarmAgent walker{{0, 0}, 1, 1, 0};
    const auto moved = backtracking_step(walker, {-1, 0}, slope, spaced, 2.0, p);
    CHECK_FALSE(moved.stalled);
    CHECK(moved.step < p.max_step);
    CHECK(distance(moved.position, neighbor) >= d_min);
    CHECK(moved.position.x > 0);

    const FeasibilityCheck nowhere = [](Point2) { return false; };
    const auto stuck = backtracking_step(agent, {0.6, -0.4}, quad, nowhere, 2.0, params);
    CHECK(stuck.stalled);
    CHECK(stuck.step == 0.0);
    CHECK(stuck.position == agent.position);
}

TEST_CASE("a single agent is projected gradient descent with backtracking")
{
    const ScalarObjective f = [](Point2 p)
    { return (p.x - 0.1) * (p.x - 0.1) + 2 * (p.y + 0.05) * (p.y + 0.05) + 0.3 * std::sin(3 * p.x) * std::cos(2 * p.y); };
    SwarmParams params = plain_params();
    params.num_agents = 1;
    params.max_inner = 30;
    params.tolerance = 1e-9;
    const double region = 1.0;
    const Point2 start{0.4, 0.3};

    Rng rng = make_rng(1, Stream::agents);
    const auto run = swarm_minimize(f, start, f(start), anywhere, region, params, rng);

    // Reference: textbook projected gradient descent, Armijo factor xi, full step tau_max.
    Point2 q = start;
    double fq = f(start);
    std::vector<double> reference;
    const double h = params.gradient_step;
    for (int it = 0; it < params.max_inner; ++it)
    {
        const Point2 g{(f({q.x + h, q.y}) - f({q.x - h, q.y})) / (2 * h),
                       (f({q.x, q.y + h}) - f({q.x, q.y - h})) / (2 * h)};
        double tau = params.max_step;
        for (int b = 0; b <= params.max_backtracks; ++b, tau *= params.shrink_factor)
        {
            const Point2 c = project_to_region(q - tau * g, region);
            const double fc = f(c);
            if (fc <= fq - params.armijo * tau * g.squared_norm())
            {
                q = c;
                const double prev = fq;
                fq = fc;
                reference.push_back(fq);
                if (prev - fq <= params.tolerance * std::abs(prev))
                    it = params.max_inner;
                break;
            }
        }
    }
    REQUIRE(run.best_per_iteration.size() == reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i)
        CHECK(std::abs(run.best_per_iteration[i] - reference[i]) < 1e-10);
    CHECK(distance(run.position, q) < 1e-10);
}

TEST_CASE("alternating optimization")
{
    ScenarioConfig sc;
    sc.num_antennas = 4;
    sc.num_targets = 1;
    sc.num_snapshots = 8;
    sc.region_size = 3 * sc.wavelength;
    SwarmParams params = SwarmParams::for_wavelength(sc.wavelength);
    params.num_agents = 4;
    params.max_inner = 5;
    params.max_outer = 5;
    const auto samples = draw_sample_set(sc, 5, 2);
    const auto initial = full_aperture_upa(sc);

    SECTION("no passes returns the initial geometry")
    {
        SwarmParams none = params;
        none.max_outer = 0;
        const auto r = optimize_positions(sc, none, samples, initial, 1);
        CHECK(r.geometry.positions == initial.positions);
        CHECK(r.final_objective == r.initial_objective);
    }
    SECTION("monotone, feasible and deterministic")
    {
        const auto r = optimize_positions(sc, params, samples, initial, 1);
        CHECK(r.final_objective <= r.initial_objective);
        for (std::size_t i = 1; i < r.trace.size(); ++i)
            REQUIRE(r.trace[i].best_objective <= r.trace[i - 1].best_objective);
        CHECK(validate_geometry(r.geometry).empty());
        const auto again = optimize_positions(sc, params, samples, initial, 1);
        CHECK(again.geometry.positions == r.geometry.positions);
        CHECK(again.final_objective == r.final_objective);
    }
    SECTION("infeasible start")
    {
        ArrayGeometry bad = initial;
        bad.positions[1] = bad.positions[0];
        CHECK_THROWS_AS(optimize_positions(sc, params, samples, bad, 1), InvalidInput);
    }
}
