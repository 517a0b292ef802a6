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

#include "macrb/baselines.hpp"
#include "macrb/errors.hpp"

namespace macrb
{

namespace
{

int lattice_side(int num_antennas)
{
    int m = 0;
    while (m * m < num_antennas)
        ++m;
    return m;
}

// Node offsets (2 c - (m - 1)) * scale / divisor, exact at the lattice ends.
std::vector<Point2> lattice(int num_antennas, double scale, double divisor)
{
    if (num_antennas < 1)
        throw InvalidInput("a lattice needs at least one antenna");
    const int m = lattice_side(num_antennas);
    auto coord = [&](int c) { return scale * static_cast<double>(2 * c - (m - 1)) / divisor; };
    std::vector<Point2> out;
    for (int n = 0; n < num_antennas; ++n)
        out.push_back({coord(n % m), coord(n / m)});
    return out;
}

} // namespace

std::vector<Point2> lattice_positions(int num_antennas, double spacing)
{
    return lattice(num_antennas, spacing, 2.0);
}

ArrayGeometry dense_upa(int num_antennas, double wavelength)
{
    return {lattice_positions(num_antennas, wavelength / 2.0), 0.0, wavelength / 2.0};
}

ArrayGeometry dense_upa(const ScenarioConfig &scenario)
{
    ArrayGeometry g = dense_upa(scenario.num_antennas, scenario.wavelength);
    g.region_size = scenario.region_size;
    g.min_spacing = scenario.min_spacing;
    return g;
}

ArrayGeometry sparse_upa(int num_antennas, double region_size)
{
    const int m = lattice_side(num_antennas);
    if (m < 2)
        throw InvalidInput("sparse lattice needs ceil(sqrt(N)) >= 2");
    return {lattice(num_antennas, region_size / 2.0, static_cast<double>(m - 1)), region_size, 0.0};
}

ArrayGeometry sparse_upa(const ScenarioConfig &scenario)
{
    ArrayGeometry g = sparse_upa(scenario.num_antennas, scenario.region_size);
    g.min_spacing = scenario.min_spacing;
    return g;
}

ArrayGeometry full_aperture_upa(const ScenarioConfig &scenario) { return sparse_upa(scenario); }

OptimizationResult single_target_ma_baseline(const ScenarioConfig &scenario, const SwarmParams &params,
                                             std::size_t num_samples, std::uint64_t seed)
{
    ScenarioConfig single = scenario;
    single.num_targets = 1;
    return proposed_ma(single, params, num_samples, seed);
}

OptimizationResult proposed_ma(const ScenarioConfig &scenario, const SwarmParams &params, std::size_t num_samples,
                               std::uint64_t seed)
{
    const auto samples = draw_sample_set(scenario, num_samples, seed);
    return optimize_positions(scenario, params, samples, full_aperture_upa(scenario), seed);
}

} // namespace macrb
