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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "macrb/music.hpp"
#include "macrb/swarm.hpp"
#include "macrb/types.hpp"

namespace macrb
{

inline constexpr std::string_view kVersion = "0.1.0";

enum class Scheme
{
    proposed_ma,
    single_target_ma,
    dense_upa,
    sparse_upa,
    lower_bound,
};

std::string_view scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);

enum class SweepParameter
{
    snr_db,
    num_snapshots,
    num_targets,
    region_size_over_lambda,
    angle_range, // u_max = v_max
    num_antennas,
};

std::string_view parameter_name(SweepParameter parameter);
SweepParameter parse_parameter(std::string_view name);

struct SweepSpec
{
    SweepParameter parameter = SweepParameter::snr_db;
    std::vector<double> values{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    int trials = 200;
    std::vector<Scheme> schemes{Scheme::proposed_ma, Scheme::single_target_ma, Scheme::dense_upa, Scheme::sparse_upa,
                                Scheme::lower_bound};

    /// Values non-empty and ascending, trials >= 1, schemes non-empty.
    void validate() const;
};

/// Everything a command needs. Read from and written to a flat `key = value`
/// file; the manifest written by every command loads back into the same run.
struct RunConfig
{
    ScenarioConfig scenario;
    SwarmParams swarm = SwarmParams::for_wavelength(0.05);
    int mc_samples = 100;
    int music_grid = kDefaultMusicGrid;
    SweepSpec sweep;

    /// "full" (N=16, K=5, T=64, A=12 lambda, I=25, J=L=50, M=100, 200 trials)
    /// or "desk" (N=8, K=3, T=16, A=6 lambda, I=8, J=L=10, M=20, 20 trials).
    static RunConfig preset(std::string_view name);

    /// Throws InvalidInput for unknown keys or unparsable values.
    void set(std::string_view key, std::string_view value);

    /// Applies `key = value` lines in order; '#' starts a comment.
    void apply(std::istream &in);
    void load(const std::filesystem::path &path);

    std::string manifest() const;
    void validate() const;
};

/// The scenario with the swept parameter set to `x`.
ScenarioConfig scenario_at(const ScenarioConfig &base, SweepParameter parameter, double x);

/// Targets and waveforms of one evaluation trial, shared by all schemes.
struct TrialDraw
{
    TargetSet targets;
    CMatrix source;
};

TrialDraw draw_trial(const ScenarioConfig &scenario, std::uint64_t seed, std::uint64_t trial, std::uint64_t point);

/// One MUSIC realization: synthesize snapshots with the (trial_noise, trial,
/// point) stream, estimate on a square grid over the angle box, and score.
EstimationResult music_trial(const ArrayGeometry &geometry, const ScenarioConfig &scenario, const TrialDraw &draw,
                             int grid_points, std::uint64_t seed, std::uint64_t trial, std::uint64_t point,
                             MusicSpectrum *spectrum = nullptr);

struct CurvePoint
{
    Scheme scheme = Scheme::proposed_ma;
    double x = 0.0;
    double crb_mean = 0.0;
    double mse_mean = 0.0;
    int trials = 0;   // successful trials
    int failures = 0; // excluded trials
    std::uint64_t seed_base = 0;
    bool flagged = false; // more than 1% of trials failed
    bool resumed = false; // read back from an existing curves.csv
};

struct SweepResult
{
    std::vector<CurvePoint> points;
    bool degraded = false;
};

/// Writes curves.csv (scheme,x,crb,mse,trials) row by row, plus
/// geometry_<scheme>_<i>.csv and trace_<scheme>_<i>.csv for each point. Rows
/// already present in curves.csv are skipped, so an interrupted run resumes.
SweepResult run_sweep(const RunConfig &config, const std::filesystem::path &out_dir, std::ostream *log = nullptr);

/// Geometry that a scheme evaluates at a scenario. lower_bound has none.
struct SchemeGeometry
{
    ArrayGeometry geometry;
    std::vector<TraceRow> trace;
    bool degraded = false;
};

SchemeGeometry build_scheme_geometry(Scheme scheme, const ScenarioConfig &scenario, const RunConfig &config);

struct DiagnosticsRow
{
    std::string name;
    double rho_mean = 0.0;
    double omega_mean = 0.0;
    double mean_distance = 0.0;
    double realization_mse = 0.0;
    int draws = 0;
};

/// rho and omega averaged over `draws` target realizations (trial streams of `seed`).
DiagnosticsRow average_diagnostics(const ArrayGeometry &geometry, const ScenarioConfig &scenario, int draws,
                                   std::uint64_t seed);

/// Writes diagnostics.csv (name,rho_mean,omega_mean,mean_distance,realization_mse)
/// plus correlation_grid.csv and spectrum_grid.csv per geometry. With more than
/// one geometry the grid files carry a _<name> suffix.
std::vector<DiagnosticsRow> diagnostics_report(const std::vector<std::pair<std::string, ArrayGeometry>> &geometries,
                                               const RunConfig &config, SpatialAngle reference,
                                               const std::filesystem::path &out_dir);

void write_trace_csv(const std::vector<TraceRow> &trace, const std::filesystem::path &path);

/// Rows trial,k,true_u,true_v,est_u,est_v,sq_err.
void write_trials_csv(const std::vector<EstimationResult> &trials, const std::vector<TargetSet> &truths,
                      const std::filesystem::path &path);

} // namespace macrb
