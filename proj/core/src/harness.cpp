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


#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "macrb/baselines.hpp"
#include "macrb/bounds.hpp"
#include "macrb/crb.hpp"
#include "macrb/csv.hpp"
#include "macrb/errors.hpp"
#include "macrb/geometry.hpp"
#include "macrb/harness.hpp"
#include "macrb/montecarlo.hpp"
#include "macrb/snapshots.hpp"

namespace macrb
{

namespace
{

constexpr std::pair<Scheme, std::string_view> kSchemes[] = {
    {Scheme::proposed_ma, "proposed_ma"}, {Scheme::single_target_ma, "single_target_ma"},
    {Scheme::dense_upa, "dense_upa"},     {Scheme::sparse_upa, "sparse_upa"},
    {Scheme::lower_bound, "lower_bound"},
};

constexpr std::pair<SweepParameter, std::string_view> kParameters[] = {
    {SweepParameter::snr_db, "snr_db"},
    {SweepParameter::num_snapshots, "num_snapshots"},
    {SweepParameter::num_targets, "num_targets"},
    {SweepParameter::region_size_over_lambda, "region_size_over_lambda"},
    {SweepParameter::angle_range, "angle_range"},
    {SweepParameter::num_antennas, "num_antennas"},
};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text)
{
    Int value{};
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw InvalidInput("config key '" + std::string(key) + "': not an integer: " + std::string(text));
    return value;
}

double parse_real(std::string_view key, std::string_view text)
{
    try
    {
        return parse_double(text);
    }
    catch (const std::exception &)
    {
        throw InvalidInput("config key '" + std::string(key) + "': not a number: " + std::string(text));
    }
}

std::string join_values(const std::vector<double> &values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? "," : "") + format_double(values[i]);
    return out;
}

std::string point_key(Scheme scheme, double x) { return std::string(scheme_name(scheme)) + "," + format_double(x); }

std::ofstream open_out(const std::filesystem::path &path, std::ios::openmode mode = std::ios::out)
{
    std::ofstream out(path, mode);
    if (!out)
        throw InvalidInput("cannot write " + path.string());
    return out;
}

} // namespace

std::string_view scheme_name(Scheme scheme)
{
    for (const auto &[s, name] : kSchemes)
        if (s == scheme)
            return name;
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    for (const auto &[s, n] : kSchemes)
        if (n == name)
            return s;
    throw InvalidInput("unknown scheme: " + std::string(name));
}

std::string_view parameter_name(SweepParameter parameter)
{
    for (const auto &[p, name] : kParameters)
        if (p == parameter)
            return name;
    return "unknown";
}

SweepParameter parse_parameter(std::string_view name)
{
    for (const auto &[p, n] : kParameters)
        if (n == name)
            return p;
    throw InvalidInput("unknown sweep parameter: " + std::string(name));
}

void SweepSpec::validate() const
{
    if (values.empty())
        throw InvalidInput("sweep needs at least one value");
    if (!std::is_sorted(values.begin(), values.end()))
        throw InvalidInput("sweep values must be ascending");
    if (trials < 1)
        throw InvalidInput("sweep needs at least one trial per point");
    if (schemes.empty())
        throw InvalidInput("sweep needs at least one scheme");
}

RunConfig RunConfig::preset(std::string_view name)
{
    RunConfig c;
    if (name == "full")
        return c;
    if (name == "desk")
    {
        c.scenario.num_antennas = 8;
        c.scenario.num_targets = 3;
        c.scenario.num_snapshots = 16;
        c.scenario.region_size = 6 * c.scenario.wavelength;
        c.swarm.num_agents = 8;
        c.swarm.max_outer = 10;
        c.swarm.max_inner = 10;
        c.mc_samples = 20;
        c.music_grid = 201;
        c.sweep.values = {0.0, 10.0, 20.0, 30.0};
        c.sweep.trials = 20;
        return c;
    }
    throw InvalidInput("unknown preset: " + std::string(name));
}

void RunConfig::set(std::string_view key, std::string_view value)
{
    auto &s = scenario;
    auto &w = swarm;
    auto real = [&](double &field) { field = parse_real(key, value); };
    auto integer = [&](int &field) { field = parse_integer<int>(key, value); };

    if (key == "wavelength") real(s.wavelength);
    else if (key == "region_size") real(s.region_size);
    else if (key == "min_spacing") real(s.min_spacing);
    else if (key == "num_antennas") integer(s.num_antennas);
    else if (key == "num_targets") integer(s.num_targets);
    else if (key == "num_snapshots") integer(s.num_snapshots);
    else if (key == "signal_power") real(s.signal_power);
    else if (key == "noise_power") real(s.noise_power);
    else if (key == "snr_db") s.set_snr_db(parse_real(key, value));
    else if (key == "u_max") real(s.u_max);
    else if (key == "v_max") real(s.v_max);
    else if (key == "seed") s.seed = parse_integer<std::uint64_t>(key, value);
    else if (key == "num_agents") integer(w.num_agents);
    else if (key == "mass_exponent") real(w.mass_exponent);
    else if (key == "step_exponent") real(w.step_exponent);
    else if (key == "max_step") real(w.max_step);
    else if (key == "shrink_factor") real(w.shrink_factor);
    else if (key == "armijo") real(w.armijo);
    else if (key == "max_outer") integer(w.max_outer);
    else if (key == "max_inner") integer(w.max_inner);
    else if (key == "max_backtracks") integer(w.max_backtracks);
    else if (key == "tolerance") real(w.tolerance);
    else if (key == "gradient_step") real(w.gradient_step);
    else if (key == "max_init_attempts") integer(w.max_init_attempts);
    else if (key == "mc_samples") integer(mc_samples);
    else if (key == "music_grid") integer(music_grid);
    else if (key == "sweep_parameter") sweep.parameter = parse_parameter(value);
    else if (key == "trials") integer(sweep.trials);
    else if (key == "sweep_values")
    {
        sweep.values.clear();
        for (const auto &item : split_csv_line(value))
            sweep.values.push_back(parse_real(key, trim(item)));
    }
    else if (key == "schemes")
    {
        sweep.schemes.clear();
        for (const auto &item : split_csv_line(value))
            sweep.schemes.push_back(parse_scheme(trim(item)));
    }
    else if (key == "version") {}
    else throw InvalidInput("unknown config key: " + std::string(key));
}

void RunConfig::apply(std::istream &in)
{
    std::string line;
    int number = 0;
    while (std::getline(in, line))
    {
        ++number;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos)
            body = body.substr(0, hash);
        body = trim(body);
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw InvalidInput("config line " + std::to_string(number) + ": expected key = value");
        set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    }
}

void RunConfig::load(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot read config " + path.string());
    apply(in);
}

std::string RunConfig::manifest() const
{
    std::ostringstream os;
    const auto &s = scenario;
    const auto &w = swarm;
    auto put = [&](std::string_view key, const std::string &value) { os << key << " = " << value << '\n'; };
    auto real = [&](std::string_view key, double v) { put(key, format_double(v)); };
    auto integer = [&](std::string_view key, long long v) { put(key, std::to_string(v)); };

    put("version", std::string(kVersion));
    real("wavelength", s.wavelength);
    real("region_size", s.region_size);
    real("min_spacing", s.min_spacing);
    integer("num_antennas", s.num_antennas);
    integer("num_targets", s.num_targets);
    integer("num_snapshots", s.num_snapshots);
    real("signal_power", s.signal_power);
    os << "# snr_db = " << format_double(s.snr_db()) << '\n';
    real("noise_power", s.noise_power);
    real("u_max", s.u_max);
    real("v_max", s.v_max);
    put("seed", std::to_string(s.seed));
    integer("num_agents", w.num_agents);
    real("mass_exponent", w.mass_exponent);
    real("step_exponent", w.step_exponent);
    real("max_step", w.max_step);
    real("shrink_factor", w.shrink_factor);
    real("armijo", w.armijo);
    integer("max_outer", w.max_outer);
    integer("max_inner", w.max_inner);
    integer("max_backtracks", w.max_backtracks);
    real("tolerance", w.tolerance);
    real("gradient_step", w.gradient_step);
    integer("max_init_attempts", w.max_init_attempts);
    integer("mc_samples", mc_samples);
    integer("music_grid", music_grid);
    put("sweep_parameter", std::string(parameter_name(sweep.parameter)));
    put("sweep_values", join_values(sweep.values));
    integer("trials", sweep.trials);
    std::string schemes;
    for (std::size_t i = 0; i < sweep.schemes.size(); ++i)
        schemes += (i ? "," : "") + std::string(scheme_name(sweep.schemes[i]));
    put("schemes", schemes);
    return os.str();
}

void RunConfig::validate() const
{
    scenario.validate();
    swarm.validate();
    sweep.validate();
    if (mc_samples < 1)
        throw InvalidInput("mc_samples must be >= 1");
    if (music_grid < 3)
        throw InvalidInput("music_grid must be >= 3");
}

ScenarioConfig scenario_at(const ScenarioConfig &base, SweepParameter parameter, double x)
{
    ScenarioConfig s = base;
    switch (parameter)
    {
    case SweepParameter::snr_db:
        s.set_snr_db(x);
        break;
    case SweepParameter::num_snapshots:
        s.num_snapshots = static_cast<int>(std::lround(x));
        break;
    case SweepParameter::num_targets:
        s.num_targets = static_cast<int>(std::lround(x));
        break;
    case SweepParameter::region_size_over_lambda:
        s.region_size = x * s.wavelength;
        break;
    case SweepParameter::angle_range:
        s.u_max = s.v_max = x;
        break;
    case SweepParameter::num_antennas:
        s.num_antennas = static_cast<int>(std::lround(x));
        break;
    }
    s.validate();
    return s;
}

TrialDraw draw_trial(const ScenarioConfig &scenario, std::uint64_t seed, std::uint64_t trial, std::uint64_t point)
{
    Rng trng = make_rng(seed, Stream::trial_targets, trial, point);
    Rng srng = make_rng(seed, Stream::trial_signals, trial, point);
    TrialDraw d;
    d.targets = draw_targets(scenario, trng);
    d.source = equal_power_sources(scenario.num_targets, scenario.num_snapshots, scenario.signal_power, srng);
    return d;
}

EstimationResult music_trial(const ArrayGeometry &geometry, const ScenarioConfig &scenario, const TrialDraw &draw,
                             int grid_points, std::uint64_t seed, std::uint64_t trial, std::uint64_t point,
                             MusicSpectrum *spectrum)
{
    Rng nrng = make_rng(seed, Stream::trial_noise, trial, point);
    SnapshotBundle bundle{draw.source, scenario.noise_power, {}, {}};
    bundle = synthesize_snapshots(geometry, draw.targets, std::move(bundle), scenario.wavelength, nrng);
    const CMatrix cov = sample_covariance(bundle.received);
    const auto grid = AngleGrid::uniform(scenario.u_max, scenario.v_max, grid_points, grid_points);
    MusicSpectrum spec = music_spectrum(cov, geometry, scenario.num_targets, grid, scenario.wavelength);
    const auto picks = estimate_aoas(spec, scenario.num_targets);
    if (spectrum)
        *spectrum = std::move(spec);
    return score_estimates(draw.targets, picks.angles);
}

SchemeGeometry build_scheme_geometry(Scheme scheme, const ScenarioConfig &scenario, const RunConfig &config)
{
    SchemeGeometry out;
    const auto m = static_cast<std::size_t>(config.mc_samples);
    switch (scheme)
    {
    case Scheme::proposed_ma:
    case Scheme::single_target_ma:
    {
        const auto run = scheme == Scheme::proposed_ma ? proposed_ma(scenario, config.swarm, m, scenario.seed)
                                                       : single_target_ma_baseline(scenario, config.swarm, m,
                                                                                   scenario.seed);
        out.geometry = run.geometry;
        out.trace = run.trace;
        out.degraded = run.init_failures > 0;
        break;
    }
    case Scheme::dense_upa:
        out.geometry = dense_upa(scenario);
        break;
    case Scheme::sparse_upa:
        out.geometry = sparse_upa(scenario);
        break;
    case Scheme::lower_bound:
        break;
    }
    return out;
}

SweepResult run_sweep(const RunConfig &config, const std::filesystem::path &out_dir, std::ostream *log)
{
    config.validate();
    std::filesystem::create_directories(out_dir);
    const auto curves = out_dir / "curves.csv";

    std::map<std::string, CurvePoint> done;
    if (std::filesystem::exists(curves))
    {
        std::ifstream in(curves);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line))
        {
            const auto f = split_csv_line(line);
            if (f.size() != 5)
                continue; // a partially written last line is redone
            CurvePoint p;
            p.scheme = parse_scheme(f[0]);
            p.x = parse_double(f[1]);
            p.crb_mean = parse_double(f[2]);
            p.mse_mean = parse_double(f[3]);
            p.trials = parse_integer<int>("trials", f[4]);
            p.seed_base = config.scenario.seed;
            p.resumed = true;
            done[point_key(p.scheme, p.x)] = p;
        }
    }
    // Rewrite the completed rows so a truncated tail does not survive.
    {
        auto out = open_out(curves);
        out << "scheme,x,crb,mse,trials\n";
        for (std::size_t xi = 0; xi < config.sweep.values.size(); ++xi)
            for (const auto scheme : config.sweep.schemes)
                if (auto it = done.find(point_key(scheme, config.sweep.values[xi])); it != done.end())
                {
                    const auto &p = it->second;
                    out << scheme_name(p.scheme) << ',' << format_double(p.x) << ',' << format_double(p.crb_mean)
                        << ',' << format_double(p.mse_mean) << ',' << p.trials << '\n';
                }
    }

    SweepResult result;
    const std::uint64_t seed = config.scenario.seed;
    const int trials = config.sweep.trials;
    for (std::size_t xi = 0; xi < config.sweep.values.size(); ++xi)
    {
        const double x = config.sweep.values[xi];
        const ScenarioConfig scenario = scenario_at(config.scenario, config.sweep.parameter, x);
        for (const auto scheme : config.sweep.schemes)
        {
            if (auto it = done.find(point_key(scheme, x)); it != done.end())
            {
                result.points.push_back(it->second);
                continue;
            }
            CurvePoint p;
            p.scheme = scheme;
            p.x = x;
            p.seed_base = seed;
            if (scheme == Scheme::lower_bound)
            {
                p.crb_mean = region_bound(scenario);
                p.mse_mean = std::nan("");
                p.trials = trials;
            }
            else
            {
                const auto built = build_scheme_geometry(scheme, scenario, config);
                const std::string tag = std::string(scheme_name(scheme)) + "_" + std::to_string(xi);
                write_geometry_csv(built.geometry, out_dir / ("geometry_" + tag + ".csv"));
                if (!built.trace.empty())
                    write_trace_csv(built.trace, out_dir / ("trace_" + tag + ".csv"));
                result.degraded = result.degraded || built.degraded;

                double crb_sum = 0.0;
                double mse_sum = 0.0;
                for (int t = 0; t < trials; ++t)
                {
                    try
                    {
                        const auto draw = draw_trial(scenario, seed, static_cast<std::uint64_t>(t), xi);
                        const double crb = crb_trace(built.geometry, draw.targets, draw.source,
                                                     scenario.noise_power, scenario.wavelength);
                        const auto est = music_trial(built.geometry, scenario, draw, config.music_grid, seed,
                                                     static_cast<std::uint64_t>(t), xi);
                        crb_sum += crb;
                        mse_sum += est.total_sq_error;
                        ++p.trials;
                    }
                    catch (const std::exception &e)
                    {
                        ++p.failures;
                        if (log)
                            *log << scheme_name(scheme) << " x=" << format_double(x) << " trial " << t
                                 << " failed: " << e.what() << '\n';
                    }
                }
                p.crb_mean = p.trials ? crb_sum / p.trials : std::nan("");
                p.mse_mean = p.trials ? mse_sum / p.trials : std::nan("");
                p.flagged = p.failures * 100 > trials;
                result.degraded = result.degraded || p.flagged;
            }
            auto out = open_out(curves, std::ios::app);
            out << scheme_name(p.scheme) << ',' << format_double(p.x) << ',' << format_double(p.crb_mean) << ','
                << format_double(p.mse_mean) << ',' << p.trials << '\n';
            if (log)
                *log << scheme_name(p.scheme) << " x=" << format_double(p.x) << " crb=" << format_double(p.crb_mean)
                     << " mse=" << format_double(p.mse_mean) << (p.flagged ? " [flagged]" : "") << '\n';
            result.points.push_back(p);
        }
    }
    return result;
}

DiagnosticsRow average_diagnostics(const ArrayGeometry &geometry, const ScenarioConfig &scenario, int draws,
                                   std::uint64_t seed)
{
    DiagnosticsRow row;
    row.mean_distance = mean_distance_from_origin(geometry);
    for (int t = 0; t < draws; ++t)
    {
        Rng trng = make_rng(seed, Stream::trial_targets, static_cast<std::uint64_t>(t), 0);
        const auto targets = draw_targets(scenario, trng);
        try
        {
            const auto d = sensitivity_diagnostics(geometry, targets, scenario.wavelength);
            row.rho_mean += d.rho_mean;
            row.omega_mean += d.omega_mean;
            ++row.draws;
        }
        catch (const SingularFim &)
        {
        }
    }
    if (row.draws > 0)
    {
        row.rho_mean /= row.draws;
        row.omega_mean /= row.draws;
    }
    return row;
}

std::vector<DiagnosticsRow> diagnostics_report(const std::vector<std::pair<std::string, ArrayGeometry>> &geometries,
                                               const RunConfig &config, SpatialAngle reference,
                                               const std::filesystem::path &out_dir)
{
    std::filesystem::create_directories(out_dir);
    const auto &s = config.scenario;
    const auto grid = AngleGrid::uniform(s.u_max, s.v_max, config.music_grid, config.music_grid);
    const auto draw = draw_trial(s, s.seed, 0, 0);
    std::vector<DiagnosticsRow> rows;
    for (const auto &[name, geometry] : geometries)
    {
        const std::string suffix = geometries.size() > 1 ? "_" + name : "";
        DiagnosticsRow row = average_diagnostics(geometry, s, config.sweep.trials, s.seed);
        row.name = name;
        write_grid_csv(steering_correlation_map(geometry, reference, grid, s.wavelength),
                       out_dir / ("correlation_grid" + suffix + ".csv"));
        MusicSpectrum spectrum;
        row.realization_mse = music_trial(geometry, s, draw, config.music_grid, s.seed, 0, 0, &spectrum).total_sq_error;
        write_grid_csv({spectrum.grid, spectrum.values}, out_dir / ("spectrum_grid" + suffix + ".csv"));
        rows.push_back(row);
    }
    auto out = open_out(out_dir / "diagnostics.csv");
    out << "name,rho_mean,omega_mean,mean_distance,realization_mse\n";
    for (const auto &r : rows)
        out << r.name << ',' << format_double(r.rho_mean) << ',' << format_double(r.omega_mean) << ','
            << format_double(r.mean_distance) << ',' << format_double(r.realization_mse) << '\n';
    return rows;
}

void write_trace_csv(const std::vector<TraceRow> &trace, const std::filesystem::path &path)
{
    auto out = open_out(path);
    out << "outer,antenna,inner,best_objective\n";
    for (const auto &r : trace)
        out << r.outer << ',' << r.antenna << ',' << r.inner << ',' << format_double(r.best_objective) << '\n';
}

void write_trials_csv(const std::vector<EstimationResult> &trials, const std::vector<TargetSet> &truths,
                      const std::filesystem::path &path)
{
    if (trials.size() != truths.size())
        throw InvalidInput("trial and truth counts differ");
    auto out = open_out(path);
    out << "trial,k,true_u,true_v,est_u,est_v,sq_err\n";
    for (std::size_t t = 0; t < trials.size(); ++t)
        for (std::size_t k = 0; k < truths[t].size(); ++k)
            out << t << ',' << k << ',' << format_double(truths[t][k].u) << ',' << format_double(truths[t][k].v)
                << ',' << format_double(trials[t].estimated[k].u) << ',' << format_double(trials[t].estimated[k].v)
                << ',' << format_double(trials[t].per_target_sq_errors[k]) << '\n';
}

} // namespace macrb
