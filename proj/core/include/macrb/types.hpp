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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace macrb
{

using cd = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double pi = std::numbers::pi;

struct Point2
{
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point2 a, Point2 b) = default;

    double norm() const { return std::hypot(x, y); }
    double squared_norm() const { return x * x + y * y; }
};

inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

/// Spatial direction of a far-field target: u = cos(phi) sin(theta), v = cos(theta).
/// Physically realizable directions satisfy u^2 + v^2 <= 1.
struct SpatialAngle
{
    double u = 0.0;
    double v = 0.0;

    friend bool operator==(SpatialAngle a, SpatialAngle b) = default;
};

using TargetSet = std::vector<SpatialAngle>;

/// Converts physical elevation/azimuth (radians) to spatial coordinates.
inline SpatialAngle from_elevation_azimuth(double theta, double phi)
{
    return {std::cos(phi) * std::sin(theta), std::cos(theta)};
}

/// Antenna positions (meters) inside the square [-A/2, A/2]^2.
struct ArrayGeometry
{
    std::vector<Point2> positions;
    double region_size = 0.0; // A
    double min_spacing = 0.0; // d_min

    std::size_t size() const { return positions.size(); }
};

/// Scenario parameters shared by every module. Powers are linear; the SNR is
/// signal_power / noise_power.
struct ScenarioConfig
{
    double wavelength = 0.05;
    double region_size = 12 * 0.05;
    double min_spacing = 0.05 / 2;
    int num_antennas = 16;
    int num_targets = 5;
    int num_snapshots = 64;
    double signal_power = 1.0;
    double noise_power = 0.1;
    double u_max = 0.6;
    double v_max = 0.6;
    std::uint64_t seed = 1;

    double snr_db() const { return 10.0 * std::log10(signal_power / noise_power); }
    void set_snr_db(double snr_db) { noise_power = signal_power * std::pow(10.0, -snr_db / 10.0); }

    /// Throws InvalidInput when a field is out of range.
    void validate() const;
};

} // namespace macrb
