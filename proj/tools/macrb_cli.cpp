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


#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "macrb/baselines.hpp"
#include "macrb/bounds.hpp"
#include "macrb/crb.hpp"
#include "macrb/csv.hpp"
#include "macrb/errors.hpp"
#include "macrb/geometry.hpp"
#include "macrb/harness.hpp"

namespace fs = std::filesystem;
using namespace macrb;

namespace
{

constexpr int kDegraded = 2;

struct GlobalOptions
{
    std::string preset = "full";
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    std::string geometry;
};

RunConfig resolve(const GlobalOptions &g)
{
    RunConfig c = RunConfig::preset(g.preset);
    if (!g.config.empty())
        c.load(g.config);
    if (g.seed)
        c.scenario.seed = *g.seed;
    c.validate();
    return c;
}

void write_manifest(const RunConfig &c, const fs::path &out)
{
    fs::create_directories(out);
    std::ofstream(out / "manifest.txt") << c.manifest();
}

ArrayGeometry input_geometry(const GlobalOptions &g, const RunConfig &c)
{
    if (g.geometry.empty())
        return full_aperture_upa(c.scenario);
    return read_geometry_csv(g.geometry, c.scenario.region_size, c.scenario.min_spacing);
}

int run_optimize(const GlobalOptions &g)
{
    const RunConfig c = resolve(g);
    const fs::path out = g.out;
    write_manifest(c, out);
    const auto samples = draw_sample_set(c.scenario, static_cast<std::size_t>(c.mc_samples), c.scenario.seed);
    const auto res = optimize_positions(c.scenario, c.swarm, samples, input_geometry(g, c), c.scenario.seed);
    write_geometry_csv(res.geometry, out / "geometry_proposed_ma.csv");
    write_trace_csv(res.trace, out / "trace.csv");
    std::cout << "initial expected tr(CRB) " << format_double(res.initial_objective) << "\n"
              << "final expected tr(CRB)   " << format_double(res.final_objective) << "\n"
              << "outer passes " << res.outer_iterations << ", agent init fallbacks " << res.init_failures
              << ", skipped gradients " << res.gradient_failures << "\n";
    return res.init_failures > 0 ? kDegraded : 0;
}

int run_crb(const GlobalOptions &g)
{
    const RunConfig c = resolve(g);
    const fs::path out = g.out;
    write_manifest(c, out);
    const auto geometry = input_geometry(g, c);
    const auto draw = draw_trial(c.scenario, c.scenario.seed, 0, 0);
    const auto crb = crb_matrix(geometry, draw.targets, draw.source, c.scenario.noise_power, c.scenario.wavelength);
    auto report = check_bound_conditions(geometry, draw.targets, draw.source, c.scenario.wavelength);
    const auto bounds = lower_bound(geometry, c.scenario);
    std::ofstream csv(out / "crb.csv");
    csv << "trace,bound_a,bound_b,rho_mean,omega_mean,res_coupling,res_leakage,res_cov,res_var,res_mean,res_ring\n";
    csv << format_double(crb.trace) << ',' << format_double(bounds.bound_a) << ',' << format_double(bounds.bound_b)
        << ',' << format_double(report.sensitivity.rho_mean) << ',' << format_double(report.sensitivity.omega_mean);
    for (double r : report.condition_a_residuals)
        csv << ',' << format_double(r);
    for (double r : report.condition_b_residuals)
        csv << ',' << format_double(r);
    csv << '\n';
    for (std::size_t k = 0; k < draw.targets.size(); ++k)
        std::cout << "target " << k << " (" << draw.targets[k].u << ", " << draw.targets[k].v << "): CRB(u) "
                  << crb.per_target[k].first << ", CRB(v) " << crb.per_target[k].second << "\n";
    std::cout << "tr(CRB) " << format_double(crb.trace) << "\n";
    return 0;
}

int run_bound(const GlobalOptions &g)
{
    const RunConfig c = resolve(g);
    write_manifest(c, g.out);
    const auto geometry = input_geometry(g, c);
    const auto b = lower_bound(geometry, c.scenario);
    std::cout << "bound_a " << format_double(b.bound_a) << "\nbound_b " << format_double(b.bound_b) << "\n";
    return 0;
}

int run_music(const GlobalOptions &g, int trials)
{
    const RunConfig c = resolve(g);
    const fs::path out = g.out;
    write_manifest(c, out);
    const auto geometry = input_geometry(g, c);
    std::vector<EstimationResult> results;
    std::vector<TargetSet> truths;
    for (int t = 0; t < trials; ++t)
    {
        const auto draw = draw_trial(c.scenario, c.scenario.seed, static_cast<std::uint64_t>(t), 0);
        MusicSpectrum spectrum;
        results.push_back(music_trial(geometry, c.scenario, draw, c.music_grid, c.scenario.seed,
                                      static_cast<std::uint64_t>(t), 0, t == 0 ? &spectrum : nullptr));
        truths.push_back(draw.targets);
        if (t == 0)
            write_grid_csv({spectrum.grid, spectrum.values}, out / "spectrum_grid.csv");
    }
    write_trials_csv(results, truths, out / "trials.csv");
    std::cout << "MSE " << format_double(evaluate_mse(results)) << " over " << trials << " trials\n";
    return 0;
}

int run_sweep_command(const GlobalOptions &g)
{
    const RunConfig c = resolve(g);
    write_manifest(c, g.out);
    const auto result = run_sweep(c, g.out, &std::cerr);
    return result.degraded ? kDegraded : 0;
}

int run_diagnose(const GlobalOptions &g, double ref_u, double ref_v)
{
    const RunConfig c = resolve(g);
    write_manifest(c, g.out);
    std::vector<std::pair<std::string, ArrayGeometry>> geometries;
    if (!g.geometry.empty())
        geometries.emplace_back("input", input_geometry(g, c));
    geometries.emplace_back("dense_upa", dense_upa(c.scenario));
    geometries.emplace_back("sparse_upa", sparse_upa(c.scenario));
    const auto rows = diagnostics_report(geometries, c, {ref_u, ref_v}, g.out);
    for (const auto &r : rows)
        std::cout << r.name << ": rho_mean " << format_double(r.rho_mean) << ", omega_mean "
                  << format_double(r.omega_mean) << ", realization MSE " << format_double(r.realization_mse)
                  << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Movable-antenna array CRB characterization, optimization and MUSIC benchmarks"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--preset", g.preset, "Base parameters: full or desk")
        ->check(CLI::IsMember({"full", "desk"}))
        ->capture_default_str();
    app.add_option("--config", g.config, "key = value file applied over the preset (a manifest.txt replays a run)");
    app.add_option("--seed", g.seed, "Master seed (overrides the config)");
    app.add_option("--out", g.out, "Output directory")->capture_default_str();

    auto *optimize = app.add_subcommand("optimize", "Optimize antenna positions");
    auto *crb = app.add_subcommand("crb", "CRB, bounds and condition residuals for one realization");
    auto *bound = app.add_subcommand("bound", "Closed-form lower bounds of a geometry");
    auto *music = app.add_subcommand("music", "MUSIC estimation trials");
    auto *sweep = app.add_subcommand("sweep", "Parameter sweep over schemes (curves.csv)");
    auto *diagnose = app.add_subcommand("diagnose", "Sensitivity, correlation and spectrum diagnostics");
    for (auto *sub : {optimize, crb, bound, music, diagnose})
        sub->add_option("--geometry", g.geometry, "Geometry CSV (n,x,y); default is the full-aperture lattice")
            ->check(CLI::ExistingFile);
    int trials = 200;
    music->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber)->capture_default_str();
    double ref_u = 0.0;
    double ref_v = 0.0;
    diagnose->add_option("--ref-u", ref_u, "Reference target u")->capture_default_str();
    diagnose->add_option("--ref-v", ref_v, "Reference target v")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    try
    {
        if (*optimize)
            return run_optimize(g);
        if (*crb)
            return run_crb(g);
        if (*bound)
            return run_bound(g);
        if (*music)
            return run_music(g, trials);
        if (*sweep)
            return run_sweep_command(g);
        if (*diagnose)
            return run_diagnose(g, ref_u, ref_v);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
