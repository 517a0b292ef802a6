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

#include "macrb/montecarlo.hpp"
#include "macrb/swarm.hpp"
#include "macrb/types.hpp"

namespace macrb
{

/// First N nodes (row-major) of a ceil(sqrt(N)) x ceil(sqrt(N)) lattice with
/// the given spacing, centered on the full lattice's center.
std::vector<Point2> lattice_positions(int num_antennas, double spacing);

/// Half-wavelength lattice. Region and spacing fields are left at 0 and lambda/2.
ArrayGeometry dense_upa(int num_antennas, double wavelength);
ArrayGeometry dense_upa(const ScenarioConfig &scenario);

/// Lattice spanning [-A/2, A/2] at spacing A / (ceil(sqrt(N)) - 1).
/// Throws InvalidInput when ceil(sqrt(N)) < 2.
ArrayGeometry sparse_upa(int num_antennas, double region_size);
ArrayGeometry sparse_upa(const ScenarioConfig &scenario);

/// The optimizer's starting point; identical to sparse_upa(scenario).
ArrayGeometry full_aperture_upa(const ScenarioConfig &scenario);

/// The optimizer run against a single-target distribution over the same
/// angle box (K forced to 1), starting from the full-aperture lattice.
OptimizationResult single_target_ma_baseline(const ScenarioConfig &scenario, const SwarmParams &params,
                                             std::size_t num_samples, std::uint64_t seed);

/// The proposed design: draw_sample_set + optimize_positions from the full-aperture lattice.
OptimizationResult proposed_ma(const ScenarioConfig &scenario, const SwarmParams &params, std::size_t num_samples,
                               std::uint64_t seed);

} // namespace macrb
