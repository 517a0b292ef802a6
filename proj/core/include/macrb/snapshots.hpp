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

#include "macrb/random.hpp"
#include "macrb/types.hpp"

namespace macrb
{

/// Source waveforms plus (once synthesized) what the array received.
struct SnapshotBundle
{
    CMatrix source;        // S, K x T
    double noise_power = 0;
    CMatrix received;      // Y, N x T; empty until synthesized
    CMatrix steering;      // A, N x K; cached by synthesize_snapshots
};

/// K x T i.i.d. complex Gaussian waveforms, each row rescaled so that
/// ||s_k||^2 / T == signal_power.
CMatrix equal_power_sources(int num_targets, int num_snapshots, double signal_power, Rng &rng);

/// Y = A S + Z with Z ~ CN(0, noise_power) per entry, drawn from `rng`.
/// Throws InvalidInput when S does not have |targets| rows.
SnapshotBundle synthesize_snapshots(const ArrayGeometry &geometry, const TargetSet &targets, SnapshotBundle bundle,
                                    double wavelength, Rng &rng);

/// (1/T) Y Y^H, Hermitian by construction.
CMatrix sample_covariance(const CMatrix &received);

} // namespace macrb
