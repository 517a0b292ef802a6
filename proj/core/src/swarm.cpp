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
#include <random>
#include <string>

#include "macrb/errors.hpp"
#include "macrb/geometry.hpp"
#include "macrb/swarm.hpp"

namespace macrb
{

SwarmParams SwarmParams::for_wavelength(double wavelength)
{
    SwarmParams p;
    p.max_step = 0.25 * wavelength;
    p.gradient_step = 1e-4 * wavelength;
    return p;
}

void SwarmParams::validate() const
{
    auto need = [](bool ok, const char *what)
    {
        if (!ok)
            throw InvalidInput(std::string("swarm parameter out of range: ") + what);
    };
    need(num_agents >= 1, "num_agents >= 1");
    need(mass_exponent > 0, "mass_exponent > 0");
    need(step_exponent > 0, "step_exponent > 0");
    need(max_step > 0 && std::isfinite(max_step), "max_step > 0");
    need(shrink_factor > 0 && shrink_factor < 1, "shrink_factor in (0, 1)");
    need(armijo > 0 && armijo < 1, "armijo in (0, 1)");
    need(max_outer >= 0, "max_outer >= 0");
    need(max_inner >= 1, "max_inner >= 1");
    need(max_backtracks >= 0, "max_backtracks >= 0");
    need(tolerance > 0, "tolerance > 0");
    need(gradient_step > 0 && std::isfinite(gradient_step), "gradient_step > 0");
    need(max_init_attempts >= 1, "max_init_attempts >= 1");
}

Point2 project_to_region(Point2 position, double region_size)
{
    const double h = region_size / 2.0;
    return {std::clamp(position.x, -h, h), std::clamp(position.y, -h, h)};
}

Point2 numeric_gradient(const ScalarObjective &objective, Point2 position, double step, double region_size)
{
    const double h = region_size / 2.0;
    auto eval = [&](Point2 p)
    {
        try
        {
            return objective(project_to_region(p, region_size));
        }
        catch (const std::exception &e)
        {
            throw GradientError(std::string("objective failed at a gradient probe: ") + e.what());
        }
    };

    bool have_center = false;
    double center = 0.0;
    auto partial = [&](double coord, Point2 unit)
    {
        const Point2 fwd = position + step * unit;
        const Point2 bwd = position - step * unit;
        if (coord - step >= -h && coord + step <= h)
            return (eval(fwd) - eval(bwd)) / (2.0 * step);
        if (!have_center)
        {
            center = eval(position);
            have_center = true;
        }
        if (coord + step > h)
            return (center - eval(bwd)) / step;
        return (eval(fwd) - center) / step;
    };
    return {partial(position.x, {1.0, 0.0}), partial(position.y, {0.0, 1.0})};
}

void update_masses(std::span<SwarmAgent> swarm, double mass_exponent)
{
    if (swarm.empty())
        return;
    std::size_t best = 0;
    double lo = swarm[0].value;
    double hi = swarm[0].value;
    for (std::size_t i = 1; i < swarm.size(); ++i)
    {
        if (swarm[i].value < lo)
        {
            lo = swarm[i].value;
            best = i;
        }
        hi = std::max(hi, swarm[i].value);
    }
    const double range = hi - lo;
    if (range >= 1e-15 * std::max(1.0, std::abs(lo)))
    {
        double gained = 0.0;
        for (std::size_t i = 0; i < swarm.size(); ++i)
        {
            if (i == best)
                continue;
            const double kappa = std::pow((swarm[i].value - lo) / range, mass_exponent);
            const double moved = kappa * swarm[i].mass;
            swarm[i].mass -= moved;
            gained += moved;
        }
        swarm[best].mass += gained;
    }
    double heaviest = 0.0;
    for (const auto &a : swarm)
        heaviest = std::max(heaviest, a.mass);
    for (auto &a : swarm)
        a.relative_mass = heaviest > 0 ? a.mass / heaviest : 0.0;
}

StepOutcome backtracking_step(const SwarmAgent &agent, Point2 gradient, const ScalarObjective &objective,
                              const FeasibilityCheck &feasible, double region_size, const SwarmParams &params)
{
    const double g2 = gradient.squared_norm();
    if (g2 == 0.0)
        return {agent.position, agent.value, params.max_step, false};

    const double beta = std::pow(agent.relative_mass, params.step_exponent);
    double tau = params.max_step;
    for (int b = 0; b <= params.max_backtracks; ++b, tau *= params.shrink_factor)
    {
        const Point2 cand = project_to_region(agent.position - tau * gradient, region_size);
        if (!feasible(cand))
            continue;
        double value = 0.0;
        try
        {
            value = objective(cand);
        }
        catch (const std::exception &)
        {
            continue;
        }
        if (value <= agent.value - params.armijo * beta * tau * g2)
            return {cand, value, tau, false};
    }
    return {agent.position, agent.value, 0.0, true};
}

SwarmRun swarm_minimize(const ScalarObjective &objective, Point2 incumbent, double incumbent_value,
                        const FeasibilityCheck &feasible, double region_size, const SwarmParams &params, Rng &rng)
{
    params.validate();
    SwarmRun run;
    const auto count = static_cast<std::size_t>(params.num_agents);
    std::vector<SwarmAgent> swarm(count);
    const double h = region_size / 2.0;
    std::uniform_real_distribution<double> coord(-h, h);

    swarm[0] = {incumbent, 1.0 / static_cast<double>(count), 1.0, incumbent_value};
    for (std::size_t i = 1; i < count; ++i)
    {
        swarm[i] = swarm[0];
        bool placed = false;
        for (int attempt = 0; attempt < params.max_init_attempts && !placed; ++attempt)
        {
            const double x = coord(rng);
            const Point2 cand{x, coord(rng)};
            if (!feasible(cand))
                continue;
            try
            {
                swarm[i].value = objective(cand);
            }
            catch (const std::exception &)
            {
                continue;
            }
            swarm[i].position = cand;
            placed = true;
        }
        if (!placed)
            ++run.init_failures;
    }

    double committed = incumbent_value;
    run.position = incumbent;
    run.value = incumbent_value;
    for (int it = 0; it < params.max_inner; ++it)
    {
        update_masses(swarm, params.mass_exponent);
        for (auto &agent : swarm)
        {
            Point2 grad;
            try
            {
                grad = numeric_gradient(objective, agent.position, params.gradient_step, region_size);
            }
            catch (const GradientError &)
            {
                ++run.gradient_failures;
                continue;
            }
            const StepOutcome step = backtracking_step(agent, grad, objective, feasible, region_size, params);
            agent.position = step.position;
            agent.value = step.value;
        }

        std::size_t best = 0;
        for (std::size_t i = 1; i < count; ++i)
            if (swarm[i].value < swarm[best].value)
                best = i;
        const double previous = committed;
        if (swarm[best].value < committed)
        {
            committed = swarm[best].value;
            run.position = swarm[best].position;
            run.value = committed;
        }
        run.best_per_iteration.push_back(committed);
        if ((previous - committed) <= params.tolerance * std::abs(previous))
            break;
    }
    return run;
}

OptimizationResult optimize_positions(const ScenarioConfig &scenario, const SwarmParams &params,
                                      const MonteCarloSampleSet &samples, const ArrayGeometry &initial,
                                      std::uint64_t seed)
{
    scenario.validate();
    params.validate();
    const auto violations = validate_geometry(initial);
    if (!violations.empty())
        throw InvalidInput("initial geometry infeasible: " + violations.front().describe());
    if (initial.size() != static_cast<std::size_t>(scenario.num_antennas))
        throw InvalidInput("initial geometry size differs from the scenario's antenna count");

    OptimizationResult res;
    res.geometry = initial;
    res.initial_objective = expected_crb_trace(initial, samples, scenario.noise_power, scenario.wavelength);
    if (!(res.initial_objective > 0) || !std::isfinite(res.initial_objective))
        throw InvalidInput("initial objective is not positive and finite");
    res.trace.push_back({0, -1, 0, res.initial_objective});

    // Swarm objective is psi / psi_initial.
    const double scale = res.initial_objective;
    double current = 1.0;
    auto &geometry = res.geometry;
    for (int outer = 1; outer <= params.max_outer; ++outer)
    {
        const double pass_start = current;
        for (int n = 0; n < static_cast<int>(geometry.size()); ++n)
        {
            const AntennaObjective objective(geometry, n, samples, scenario.noise_power, scenario.wavelength);
            const ScalarObjective scaled = [&](Point2 p) { return objective(p) / scale; };
            const FeasibilityCheck feasible = [&](Point2 p) { return respects_spacing(geometry, p, n); };
            Rng rng = make_rng(seed, Stream::agents, static_cast<std::uint64_t>(outer), static_cast<std::uint64_t>(n));
            const auto &pos = geometry.positions[static_cast<std::size_t>(n)];
            const SwarmRun run = swarm_minimize(scaled, pos, current, feasible, geometry.region_size, params, rng);
            res.init_failures += run.init_failures;
            res.gradient_failures += run.gradient_failures;
            for (std::size_t i = 0; i < run.best_per_iteration.size(); ++i)
                res.trace.push_back({outer, n, static_cast<int>(i) + 1, run.best_per_iteration[i] * scale});
            if (run.value < current)
            {
                geometry.positions[static_cast<std::size_t>(n)] = run.position;
                current = run.value;
            }
        }
        res.outer_iterations = outer;
        if (pass_start - current <= params.tolerance * std::abs(pass_start))
            break;
    }
    res.final_objective = expected_crb_trace(geometry, samples, scenario.noise_power, scenario.wavelength);
    return res;
}

} // namespace macrb
