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

#include <stdexcept>
#include <string>

namespace macrb
{

/// Bad dimensions, non-finite values, out-of-range parameters.
class InvalidInput : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// The Fisher information (or A^H A) is numerically singular. Carries the
/// closest target pair, which is almost always the cause.
class SingularFim : public std::runtime_error
{
public:
    SingularFim(const std::string &what, int first = -1, int second = -1)
        : std::runtime_error(what), first_target(first), second_target(second) {}

    int first_target;
    int second_target;
};

/// Geometry without spread along an axis (collinear or coincident antennas).
class DegenerateGeometry : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// The objective failed at a finite-difference probe point.
class GradientError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace macrb
