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
#include <random>

#include "macrb/types.hpp"

namespace macrb
{

using Rng = std::mt19937_64;

/// Logical random streams, each seeded independently from the master seed.
enum class Stream : std::uint32_t
{
    targets = 1,
    signals = 2,
    noise = 3,
    agents = 4,
    trial_targets = 5,
    trial_signals = 6,
    trial_noise = 7,
};

/// Engine for (master, stream, index, sub). `index` usually numbers a sample,
/// trial or antenna; `sub` disambiguates nested loops.
Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t index = 0, std::uint64_t sub = 0);

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
inline cd complex_gaussian(Rng &rng, double variance)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

} // namespace macrb
