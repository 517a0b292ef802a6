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

#include <cmath>
#include <random>

#include "macrb/random.hpp"
#include "macrb/snapshots.hpp"
#include "macrb/types.hpp"

namespace macrb::testing
{

inline ArrayGeometry random_geometry(int n, double region, double min_spacing, Rng &rng)
{
    std::uniform_real_distribution<double> c(-region / 2, region / 2);
    ArrayGeometry g{{}, region, min_spacing};
    while (static_cast<int>(g.size()) < n)
    {
        const Point2 p{c(rng), c(rng)};
        bool ok = true;
        for (const auto &q : g.positions)
            ok = ok && distance(p, q) >= min_spacing;
        if (ok)
            g.positions.push_back(p);
    }
    return g;
}

inline TargetSet random_targets(int k, double box, Rng &rng)
{
    std::uniform_real_distribution<double> c(-box, box);
    TargetSet t;
    while (static_cast<int>(t.size()) < k)
    {
        const SpatialAngle a{c(rng), c(rng)};
        bool ok = a.u * a.u + a.v * a.v <= 1;
        for (const auto &b : t)
            ok = ok && std::hypot(a.u - b.u, a.v - b.v) > 0.05;
        if (ok)
            t.push_back(a);
    }
    return t;
}

inline double max_rel(const RMatrix &a, const RMatrix &b)
{
    return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

} // namespace macrb::testing
