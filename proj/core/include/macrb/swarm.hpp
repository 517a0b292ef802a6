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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "macrb/montecarlo.hpp"
#include "macrb/random.hpp"
#include "macrb/types.hpp"

namespace macrb
{

/// Parameters of the alternating swarm-based gradient descent. Lengths are
/// in meters; use for_wavelength() to get the wavelength-scaled defaults.
struct SwarmParams
{
    int num_agents = 25;         // I
    double mass_exponent = 2.0;  // p
    double step_exponent = 0.5;  // q
    double max_step = 0.0125;    // tau_max
    double shrink_factor = 0.5;  // varsigma
    double armijo = 0.6;         // xi
    int max_outer = 50;          // J
    int max_inner = 50;          // L
    int max_backtracks = 40;     // B
    double tolerance = 1e-3;     // epsilon, relative decrease
    double gradient_step = 5e-6; // central-difference step
    int max_init_attempts = 1000;

    /// tau_max = 0.25 lambda and gradient step = 1e-4 lambda.
    static SwarmParams for_wavelength(double wavelength);

    /// Throws InvalidInput when a parameter is out of range.
    void validate() const;
};

struct SwarmAgent
{
    Point2 position;
    double mass = 0.0;          // g, the swarm's masses sum to 1
    double relative_mass = 0.0; // g / max g
    double value = 0.0;         // objective at `position`
};

using ScalarObjective = std::function<double(Point2)>;
using FeasibilityCheck = std::function<bool(Point2)>;

/// Component-wise clamp to [-A/2, A/2].
Point2 project_to_region(Point2 position, double region_size);

/// Central differences per axis with step `step`; an axis within `step` of the
/// region boundary falls back to the one-sided difference pointing inward.
/// Probe points are projected before evaluation. Objective failures are
/// rethrown as GradientError.
Point2 numeric_gradient(const ScalarObjective &objective, Point2 position, double step, double region_size);

/// kappa_i = ((psi_i - psi_min) / (psi_max - psi_min))^p; every agent other
/// than the best gives away kappa_i g_i to the best (lowest index on ties).
/// A flat swarm (range below 1e-15 max(1, |psi_min|)) transfers nothing.
/// Relative masses are refreshed afterwards.
void update_masses(std::span<SwarmAgent> swarm, double mass_exponent);

struct StepOutcome
{
    Point2 position;
    double value = 0.0;
    double step = 0.0; // accepted tau, 0 on stall
    bool stalled = false;
};

/// Backtracking line search along -gradient starting at tau_max, shrinking by
/// varsigma. Accepts the first projected candidate that is feasible and meets
///   psi(new) <= psi(old) - xi * beta * tau * ||gradient||^2,  beta = g~^q.
/// After max_backtracks shrinks without success the agent stays put.
StepOutcome backtracking_step(const SwarmAgent &agent, Point2 gradient, const ScalarObjective &objective,
                              const FeasibilityCheck &feasible, double region_size, const SwarmParams &params);

struct SwarmRun
{
    Point2 position;
    double value = 0.0;
    std::vector<double> best_per_iteration; // committed value after each inner iteration
    int init_failures = 0;     // agents that fell back to the incumbent
    int gradient_failures = 0; // agent steps skipped after a GradientError
};

/// Inner loop for one antenna: agent 0 starts at the incumbent (whose value is
/// passed in), the rest uniformly at random among feasible points. Each
/// iteration updates masses, then steps every agent; stops after max_inner
/// iterations or once the best value decreases by no more than `tolerance`
/// relative.
SwarmRun swarm_minimize(const ScalarObjective &objective, Point2 incumbent, double incumbent_value,
                        const FeasibilityCheck &feasible, double region_size, const SwarmParams &params, Rng &rng);

struct TraceRow
{
    int outer = 0;   // 1-based AO pass; 0 for the initial row
    int antenna = 0; // -1 for the initial row
    int inner = 0;
    double best_objective = 0.0;
};

struct OptimizationResult
{
    ArrayGeometry geometry;
    double initial_objective = 0.0;
    double final_objective = 0.0;
    std::vector<TraceRow> trace;
    int outer_iterations = 0;
    int init_failures = 0;
    int gradient_failures = 0;
};

/// Alternating optimization over antennas, each antenna solved by
/// swarm_minimize on the Monte Carlo objective. Agent streams derive from
/// `seed`. Throws InvalidInput if `initial` violates a constraint.
OptimizationResult optimize_positions(const ScenarioConfig &scenario, const SwarmParams &params,
                                      const MonteCarloSampleSet &samples, const ArrayGeometry &initial,
                                      std::uint64_t seed);

} // namespace macrb
