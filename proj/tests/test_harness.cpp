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


#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "macrb/baselines.hpp"
#include "macrb/bounds.hpp"
#include "macrb/crb.hpp"
#include "macrb/errors.hpp"
#include "macrb/geometry.hpp"
#include "macrb/harness.hpp"

using namespace macrb;
using Catch::Approx;
namespace fs = std::filesystem;

namespace
{

fs::path scratch(const std::string &name)
{
    const char *root = std::getenv("MACRB_TEST_TMP");
    fs::path dir = fs::path(root ? root : fs::temp_directory_path().string()) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunConfig tiny_config()
{
    RunConfig c = RunConfig::preset("desk");
    c.scenario.num_antennas = 4;
    c.scenario.num_targets = 1;
    c.scenario.num_snapshots = 8;
    c.scenario.region_size = 3 * c.scenario.wavelength;
    c.swarm.num_agents = 3;
    c.swarm.max_outer = 2;
    c.swarm.max_inner = 2;
    c.mc_samples = 4;
    c.music_grid = 61;
    c.sweep.values = {10.0};
    c.sweep.trials = 2;
    return c;
}

} // namespace

TEST_CASE("config round trip through the manifest")
{
    RunConfig c = RunConfig::preset("desk");
    c.set("snr_db", "17");
    c.set("seed", "99");
    c.set("schemes", "dense_upa,lower_bound");
    c.set("sweep_values", "1,2,3");
    std::istringstream in(c.manifest());
    RunConfig back = RunConfig::preset("full");
    back.apply(in);
    CHECK(back.manifest() == c.manifest());
    CHECK(back.scenario.snr_db() == Approx(17.0));
    CHECK(back.scenario.seed == 99);
    CHECK(back.sweep.schemes.size() == 2);

    CHECK_THROWS_AS(c.set("no_such_key", "1"), InvalidInput);
    CHECK_THROWS_AS(c.set("num_antennas", "four"), InvalidInput);
    CHECK_THROWS_AS(RunConfig::preset("huge"), InvalidInput);
}

TEST_CASE("lattice baselines")
{
    const double lambda = 0.05;
    const auto dense = dense_upa(16, lambda);
    REQUIRE(dense.size() == 16);
    CHECK(dense.positions[0].x == Approx(-0.75 * lambda));
    CHECK(dense.positions[0].y == Approx(-0.75 * lambda));
    CHECK(dense.positions[1].x == Approx(-0.25 * lambda));
    CHECK(dense.positions[15].x == Approx(0.75 * lambda));
    CHECK(dense.positions[15].y == Approx(0.75 * lambda));

    const auto one = lattice_positions(1, lambda / 2);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Point2{0, 0});

    const auto five = lattice_positions(5, 1.0);
    REQUIRE(five.size() == 5);
    CHECK(five[3].x == Approx(-1.0)); // row 1 starts at the first column of a 3x3 lattice
    CHECK(five[3].y == Approx(0.0));

    const double a = 0.6;
    const auto sparse = sparse_upa(16, a);
    CHECK(sparse.positions.front() == Point2{-a / 2, -a / 2});
    CHECK(sparse.positions.back() == Point2{a / 2, a / 2});
    CHECK(sparse.positions[1].x == Approx(-a / 6));
    const auto nine = sparse_upa(9, a);
    CHECK(nine.positions[4] == Point2{0, 0});
    CHECK_THROWS_AS(sparse_upa(1, a), InvalidInput);
}

TEST_CASE("lower bound row equals the closed form")
{
    ScenarioConfig s;
    const double expected = 0.5 / (147456.0 * pi * pi);
    CHECK(region_bound(s) == Approx(expected).epsilon(1e-12));
    CHECK(region_bound(s) == Approx(3.44e-7).epsilon(2e-3));
}

TEST_CASE("degenerate sweep matches direct evaluation")
{
    RunConfig c = tiny_config();
    c.sweep.schemes = {Scheme::dense_upa};
    c.sweep.trials = 1;
    const auto dir = scratch("degenerate");
    const auto r = run_sweep(c, dir);
    REQUIRE(r.points.size() == 1);

    const auto scenario = scenario_at(c.scenario, c.sweep.parameter, 10.0);
    const auto geometry = dense_upa(scenario);
    const auto draw = draw_trial(scenario, c.scenario.seed, 0, 0);
    const double crb = crb_trace(geometry, draw.targets, draw.source, scenario.noise_power, scenario.wavelength);
    const auto est = music_trial(geometry, scenario, draw, c.music_grid, c.scenario.seed, 0, 0);
    CHECK(r.points[0].crb_mean == crb);
    CHECK(r.points[0].mse_mean == est.total_sq_error);
    CHECK(fs::exists(dir / "geometry_dense_upa_0.csv"));
}

TEST_CASE("CRB decreases with SNR")
{
    RunConfig c = tiny_config();
    c.sweep.schemes = {Scheme::dense_upa, Scheme::lower_bound};
    c.sweep.values = {0.0, 10.0, 20.0, 30.0};
    const auto r = run_sweep(c, scratch("snr"));
    std::vector<double> dense, bound;
    for (const auto &p : r.points)
        (p.scheme == Scheme::dense_upa ? dense : bound).push_back(p.crb_mean);
    REQUIRE(dense.size() == 4);
    for (std::size_t i = 1; i < 4; ++i)
    {
        CHECK(dense[i] < dense[i - 1]);
        CHECK(bound[i] < bound[i - 1]);
    }
}

TEST_CASE("resume skips completed points and replay is byte-exact")
{
    RunConfig c = tiny_config();
    c.sweep.schemes = {Scheme::proposed_ma, Scheme::dense_upa, Scheme::lower_bound};
    c.sweep.values = {5.0, 15.0};

    const auto full = scratch("full");
    run_sweep(c, full);
    const std::string reference = slurp(full / "curves.csv");

    // Keep the header and the first two rows plus a torn line.
    const auto partial = scratch("partial");
    {
        std::istringstream in(reference);
        std::ofstream out(partial / "curves.csv");
        std::string line;
        for (int i = 0; i < 3 && std::getline(in, line); ++i)
            out << line << '\n';
        out << "dense_upa,15";
    }
    const auto resumed = run_sweep(c, partial);
    int reused = 0;
    for (const auto &p : resumed.points)
        reused += p.resumed ? 1 : 0;
    CHECK(reused == 2);
    CHECK(slurp(partial / "curves.csv") == reference);

    std::ofstream(full / "manifest.txt") << c.manifest();
    RunConfig replay = RunConfig::preset("full");
    replay.load(full / "manifest.txt");
    const auto again = scratch("replay");
    run_sweep(replay, again);
    CHECK(slurp(again / "curves.csv") == reference);
    CHECK(slurp(again / "geometry_proposed_ma_1.csv") == slurp(full / "geometry_proposed_ma_1.csv"));
}

TEST_CASE("diagnostics grids")
{
    RunConfig c = tiny_config();
    c.music_grid = 21;
    c.sweep.trials = 2;
    const auto dir = scratch("diag");
    const auto g = dense_upa(c.scenario);
    const auto rows = diagnostics_report({{"dense", g}}, c, {0.1, -0.2}, dir);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].draws == 2);
    CHECK(rows[0].mean_distance == Approx(mean_distance_from_origin(g)));
    CHECK(fs::exists(dir / "diagnostics.csv"));
    for (const auto &entry : fs::directory_iterator(dir))
    {
        const auto name = entry.path().filename().string();
        if (name.rfind("correlation_grid", 0) != 0)
            continue;
        std::ifstream in(entry.path());
        std::string line;
        std::getline(in, line);
        int rows_read = 0;
        while (std::getline(in, line))
            ++rows_read;
        CHECK(rows_read == 21 * 21);
    }
}
