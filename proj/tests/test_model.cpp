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

#include <Eigen/Eigenvalues>

#include "macrb/errors.hpp"
#include "macrb/geometry.hpp"
#include "macrb/random.hpp"
#include "macrb/snapshots.hpp"
#include "macrb/steering.hpp"
#include "support.hpp"

using namespace macrb;
using Catch::Approx;

namespace
{
constexpr double lambda = 0.05;
}

TEST_CASE("steering vector entries")
{
    const ArrayGeometry origin{{{0, 0}}, 1, 0};
    CHECK(steering_vector(origin, {0.3, -0.7}, lambda)(0) == cd(1, 0));

    const ArrayGeometry pair{{{0, 0}, {lambda / 2, 0}}, 1, 0};
    const CVector a = steering_vector(pair, {1, 0}, lambda);
    CHECK(a(0).real() == Approx(1));
    CHECK(a(1).real() == Approx(-1));
    CHECK(std::abs(a(1).imag()) < 1e-15);

    Rng rng = make_rng(3, Stream::targets);
    std::uniform_real_distribution<double> c(-0.7, 0.7);
    for (int trial = 0; trial < 1000; ++trial)
    {
        const auto g = testing::random_geometry(4, 0.6, 0, rng);
        const SpatialAngle ang{c(rng), c(rng)};
        const CVector v = steering_vector(g, ang, lambda);
        double norm2 = 0;
        for (int n = 0; n < 4; ++n)
        {
            const auto &p = g.positions[static_cast<std::size_t>(n)];
            const double phase = 2 * pi / lambda * (p.x * ang.u + p.y * ang.v);
            REQUIRE(std::abs(v(n) - cd(std::cos(phase), std::sin(phase))) < 1e-12);
            REQUIRE(std::abs(v(n)) == Approx(1).epsilon(1e-15));
            norm2 += std::norm(v(n));
        }
        REQUIRE(norm2 == Approx(4).epsilon(1e-14));
    }
}

TEST_CASE("steering vector rejects non-finite input")
{
    const ArrayGeometry g{{{0, std::nan("")}}, 1, 0};
    CHECK_THROWS_AS(steering_vector(g, {0, 0}, lambda), InvalidInput);
    const ArrayGeometry ok{{{0, 0}}, 1, 0};
    CHECK_THROWS_AS(steering_vector(ok, {INFINITY, 0}, lambda), InvalidInput);
}

TEST_CASE("steering derivatives")
{
    const ArrayGeometry on_y{{{0, 0.1}, {0, -0.2}, {0, 0.05}}, 1, 0};
    CHECK(steering_derivatives(on_y, {0.2, 0.1}, lambda).du.norm() == 0.0);

    Rng rng = make_rng(5, Stream::targets);
    std::uniform_real_distribution<double> c(-0.6, 0.6);
    const double h = 1e-6;
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto g = testing::random_geometry(6, 0.6, 0, rng);
        const SpatialAngle a{c(rng), c(rng)};
        const auto d = steering_derivatives(g, a, lambda);
        for (int n = 0; n < 6; ++n)
            REQUIRE(std::abs(d.du(n)) == Approx(2 * pi / lambda * std::abs(g.positions[static_cast<std::size_t>(n)].x)));
        const CVector fd_u =
            (steering_vector(g, {a.u + h, a.v}, lambda) - steering_vector(g, {a.u - h, a.v}, lambda)) / (2 * h);
        const CVector fd_v =
            (steering_vector(g, {a.u, a.v + h}, lambda) - steering_vector(g, {a.u, a.v - h}, lambda)) / (2 * h);
        REQUIRE((fd_u - d.du).norm() <= 1e-5 * d.du.norm());
        REQUIRE((fd_v - d.dv).norm() <= 1e-5 * d.dv.norm());
    }
}

TEST_CASE("snapshot synthesis")
{
    Rng rng = make_rng(9, Stream::targets);
    const auto g = testing::random_geometry(5, 0.3, 0, rng);
    const TargetSet one{{0.1, -0.2}};

    SECTION("noiseless all-ones source repeats the steering vector")
    {
        SnapshotBundle b{CMatrix::Ones(1, 4), 0.0, {}, {}};
        Rng noise = make_rng(1, Stream::noise);
        b = synthesize_snapshots(g, one, b, lambda, noise);
        const CVector a = steering_vector(g, one[0], lambda);
        for (int t = 0; t < 4; ++t)
            CHECK(b.received.col(t) == a);
    }
    SECTION("noiseless equals A S exactly")
    {
        Rng s = make_rng(2, Stream::signals);
        const TargetSet two{{0.1, -0.2}, {-0.4, 0.3}};
        SnapshotBundle b{equal_power_sources(2, 7, 1.0, s), 0.0, {}, {}};
        Rng noise = make_rng(1, Stream::noise);
        b = synthesize_snapshots(g, two, b, lambda, noise);
        CHECK(b.received == steering_matrix(g, two, lambda) * b.source);
    }
    SECTION("noise power matches sigma^2")
    {
        const double sigma2 = 0.3;
        SnapshotBundle b{CMatrix::Zero(1, 10000), sigma2, {}, {}};
        Rng noise = make_rng(4, Stream::noise);
        b = synthesize_snapshots(g, one, b, lambda, noise);
        const double power = b.received.cwiseAbs2().mean();
        CHECK(std::abs(power - sigma2) < 0.05 * sigma2);
    }
    SECTION("same seed gives identical data")
    {
        SnapshotBundle b{CMatrix::Ones(1, 16), 0.1, {}, {}};
        Rng n1 = make_rng(4, Stream::noise);
        Rng n2 = make_rng(4, Stream::noise);
        CHECK(synthesize_snapshots(g, one, b, lambda, n1).received ==
              synthesize_snapshots(g, one, b, lambda, n2).received);
    }
    SECTION("dimension mismatch")
    {
        SnapshotBundle b{CMatrix::Ones(2, 4), 0.0, {}, {}};
        Rng noise = make_rng(1, Stream::noise);
        CHECK_THROWS_AS(synthesize_snapshots(g, one, b, lambda, noise), InvalidInput);
    }
}

TEST_CASE("equal power sources have exact per-target energy")
{
    Rng rng = make_rng(11, Stream::signals);
    const CMatrix s = equal_power_sources(4, 32, 2.5, rng);
    for (int k = 0; k < 4; ++k)
        CHECK(s.row(k).squaredNorm() / 32 == Approx(2.5).epsilon(1e-14));
}

TEST_CASE("sample covariance")
{
    Rng rng = make_rng(12, Stream::noise);
    CMatrix y(4, 1);
    for (int n = 0; n < 4; ++n)
        y(n, 0) = complex_gaussian(rng, 1.0);
    CHECK((sample_covariance(y) - y * y.adjoint()).norm() < 1e-14);

    CMatrix big(6, 20);
    for (Eigen::Index i = 0; i < big.size(); ++i)
        big(i) = complex_gaussian(rng, 1.0);
    const CMatrix r = sample_covariance(big);
    CHECK(r == CMatrix(r.adjoint()));
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(r);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * eig.eigenvalues().maxCoeff());

    const auto g = testing::random_geometry(8, 0.6, 0.025, rng);
    const TargetSet t{{0.1, 0.2}, {-0.3, 0.1}, {0.4, -0.4}};
    Rng s = make_rng(2, Stream::signals);
    const CMatrix yy = steering_matrix(g, t, lambda) * equal_power_sources(3, 10, 1.0, s);
    Eigen::JacobiSVD<CMatrix> svd(sample_covariance(yy));
    const auto sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        rank += sv(i) > 1e-10 * sv(0);
    CHECK(rank == 3);

    CHECK_THROWS_AS(sample_covariance(CMatrix(0, 0)), InvalidInput);
}

TEST_CASE("geometry validation")
{
    ArrayGeometry upa{{}, 12 * lambda, lambda / 2};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            upa.positions.push_back({(c - 1.5) * lambda / 2, (r - 1.5) * lambda / 2});
    CHECK(validate_geometry(upa).empty());

    const ArrayGeometry twin{{{0.01, 0.01}, {0.01, 0.01}}, 1, 0.02};
    const auto v = validate_geometry(twin);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == GeometryViolation::Kind::too_close);
    CHECK(v[0].value == 0.0);

    const ArrayGeometry out{{{1.0, 0}}, 1, 0};
    const auto w = validate_geometry(out);
    REQUIRE(w.size() == 1);
    CHECK(w[0].kind == GeometryViolation::Kind::outside_region);
}

TEST_CASE("scenario validation and rng streams")
{
    ScenarioConfig s;
    CHECK_NOTHROW(s.validate());
    s.set_snr_db(10);
    CHECK(s.signal_power / s.noise_power == Approx(10).epsilon(1e-15));
    s.num_targets = s.num_antennas;
    CHECK_THROWS_AS(s.validate(), InvalidInput);

    Rng a = make_rng(1, Stream::noise, 3);
    Rng b = make_rng(1, Stream::noise, 3);
    Rng c = make_rng(1, Stream::signals, 3);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
}
