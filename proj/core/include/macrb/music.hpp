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

#include <span>
#include <vector>

#include "macrb/sensitivity.hpp"
#include "macrb/types.hpp"

namespace macrb
{

inline constexpr int kDefaultMusicGrid = 401;

/// Floor applied to a^H U_z U_z^H a before taking the reciprocal.
inline constexpr double kSpectrumFloor = 1e-300;
/// A grid point is a peak only if it exceeds all 8 neighbors by this relative margin.
inline constexpr double kPlateauTolerance = 1e-10;

/// P(r) = 1 / (a(r)^H U_z U_z^H a(r)) sampled on a grid. values(i, j) is at
/// (grid.u[i], grid.v[j]).
struct MusicSpectrum
{
    AngleGrid grid;
    RMatrix values;
    int subspace_dim = 0;
    /// Eigenvalues K and K+1 (descending) coincide within 1e-12 relative.
    bool eigenvalue_tie = false;
};

/// Eigendecomposes `covariance` and uses the N - K weakest eigenvectors as
/// the noise subspace. Throws InvalidInput when K >= N or dimensions disagree.
MusicSpectrum music_spectrum(const CMatrix &covariance, const ArrayGeometry &geometry, int num_targets,
                             const AngleGrid &grid, double wavelength);

struct PeakPicks
{
    std::vector<SpatialAngle> angles;
    /// Fewer than K strict local maxima existed; padded with the largest remaining cells.
    bool padded = false;
};

/// K largest strict local maxima (8-neighborhood), each refined by a
/// quadratic fit of the spectrum denominator over its 3 x 3 neighborhood.
/// Ordered by descending spectrum value, then lexicographically by (u, v).
PeakPicks estimate_aoas(const MusicSpectrum &spectrum, int num_targets);

struct EstimationResult
{
    std::vector<SpatialAngle> estimated; // reordered so estimated[k] is matched to truth k
    std::vector<double> per_target_sq_errors;
    double total_sq_error = 0.0;
};

/// Matches estimates to truths minimizing the total squared (u, v) distance:
/// exhaustive over permutations for K <= 7, greedy nearest pairs otherwise.
/// Throws InvalidInput when the counts differ.
EstimationResult score_estimates(const TargetSet &truth, const std::vector<SpatialAngle> &estimates);

/// Mean of total_sq_error across trials; 0 for no trials.
double evaluate_mse(std::span<const EstimationResult> trials);

/// Scores every trial then averages. Throws InvalidInput on any K mismatch.
double evaluate_mse(std::span<const TargetSet> truths, std::span<const std::vector<SpatialAngle>> estimates);

} // namespace macrb
