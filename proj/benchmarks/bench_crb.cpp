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


#include <benchmark/benchmark.h>

#include "macrb/baselines.hpp"
#include "macrb/crb.hpp"
#include "macrb/montecarlo.hpp"
#include "macrb/music.hpp"
#include "macrb/snapshots.hpp"

using namespace macrb;

namespace
{

ScenarioConfig scenario_with(int antennas, int targets)
{
    ScenarioConfig s;
    s.num_antennas = antennas;
    s.num_targets = targets;
    return s;
}

void BM_CrbTrace(benchmark::State &state)
{
    const auto s = scenario_with(static_cast<int>(state.range(0)), 5);
    const auto samples = draw_sample_set(s, 1, 7);
    const auto g = full_aperture_upa(s);
    for (auto _ : state)
        benchmark::DoNotOptimize(crb_trace(g, samples[0].targets, samples[0].source, s.noise_power, s.wavelength));
}
BENCHMARK(BM_CrbTrace)->Arg(9)->Arg(16)->Arg(36);

void BM_ExpectedTrace(benchmark::State &state)
{
    const auto s = scenario_with(16, 5);
    const auto samples = draw_sample_set(s, static_cast<std::size_t>(state.range(0)), 7);
    const auto g = full_aperture_upa(s);
    for (auto _ : state)
        benchmark::DoNotOptimize(expected_crb_trace(g, samples, s.noise_power, s.wavelength));
}
BENCHMARK(BM_ExpectedTrace)->Arg(20)->Arg(100);

void BM_AntennaObjective(benchmark::State &state)
{
    const auto s = scenario_with(16, 5);
    const auto samples = draw_sample_set(s, static_cast<std::size_t>(state.range(0)), 7);
    const auto g = full_aperture_upa(s);
    const AntennaObjective objective(g, 5, samples, s.noise_power, s.wavelength);
    Point2 p = g.positions[5];
    for (auto _ : state)
    {
        p.x += 1e-9;
        benchmark::DoNotOptimize(objective(p));
    }
}
BENCHMARK(BM_AntennaObjective)->Arg(20)->Arg(100);

void BM_MusicSpectrum(benchmark::State &state)
{
    const auto s = scenario_with(16, 5);
    const auto samples = draw_sample_set(s, 1, 7);
    const auto g = dense_upa(s);
    Rng rng = make_rng(7, Stream::noise);
    SnapshotBundle b{samples[0].source, s.noise_power, {}, {}};
    b = synthesize_snapshots(g, samples[0].targets, b, s.wavelength, rng);
    const CMatrix cov = sample_covariance(b.received);
    const int n = static_cast<int>(state.range(0));
    const auto grid = AngleGrid::uniform(s.u_max, s.v_max, n, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(music_spectrum(cov, g, s.num_targets, grid, s.wavelength));
}
BENCHMARK(BM_MusicSpectrum)->Arg(101)->Arg(401);

} // namespace

BENCHMARK_MAIN();
