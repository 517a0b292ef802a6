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
#include <vector>

#include "macrb/random.hpp"
#include "macrb/types.hpp"

namespace macrb
{

/// Targets closer than this in (u, v) count as coincident and are redrawn.
inline constexpr double kMinTargetSeparation = 1e-6;

struct MonteCarloSample
{
    TargetSet targets;
    CMatrix source; // K x T, equal per-target energy
};

/// Frozen set of target/waveform realizations. The same set is reused for
/// every objective evaluation of one optimization run.
class MonteCarloSampleSet
{
public:
    MonteCarloSampleSet() = default;
    explicit MonteCarloSampleSet(std::vector<MonteCarloSample> samples) : samples_(std::move(samples)) {}

    const std::vector<MonteCarloSample> &samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    const MonteCarloSample &operator[](std::size_t m) const { return samples_[m]; }

private:
    std::vector<MonteCarloSample> samples_;
};

/// K angles uniform on the scenario box (restricted to u^2 + v^2 <= 1), redrawn
/// until pairwise separated by kMinTargetSeparation.
TargetSet draw_targets(const ScenarioConfig &scenario, Rng &rng);

/// M independent realizations. Sample m uses the (targets, m) and
/// (signals, m) streams of `seed`.
MonteCarloSampleSet draw_sample_set(const ScenarioConfig &scenario, std::size_t num_samples, std::uint64_t seed);

/// Mean of tr(CRB_m) over the set. A singular realization rethrows
/// SingularFim with the sample index in the message.
double expected_crb_trace(const ArrayGeometry &geometry, const MonteCarloSampleSet &samples, double noise_power,
                          double wavelength);

/// Expected CRB trace as a function of one antenna's position, the others
/// held fixed. Every Gram matrix entering the CRB is a sum over antennas of
/// per-antenna outer products, so the fixed antennas' share is summed once
/// at construction and each evaluation adds a single antenna: O(M K^3)
/// instead of O(M N^2 K).
class AntennaObjective
{
public:
    AntennaObjective(const ArrayGeometry &geometry, int antenna, const MonteCarloSampleSet &samples,
                     double noise_power, double wavelength);

    /// Expected trace with the antenna moved to `position`. Throws SingularFim.
    double operator()(Point2 position) const;

    int antenna() const { return antenna_; }

private:
    struct PartialSums
    {
        // Sum over fixed antennas of w_n conj(r_n) r_n^T, r_n = row n of A.
        CMatrix s0, sx, sy, sxx, sxy, syy;
        CMatrix source_cov; // R_S
        TargetSet targets;
    };

    std::vector<PartialSums> partial_;
    int antenna_;
    double noise_power_;
    double wavenumber_;
};

} // namespace macrb
