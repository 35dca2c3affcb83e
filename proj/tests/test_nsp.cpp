// SPDX-License-Identifier: Apache-2.0
//
// nsp3d - 3D radar/cellular channel modelling and null-space projection
// Copyright (C) 2026 The nsp3d authors
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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include <nsp3d/channel.hpp>
#include <nsp3d/nsp.hpp>

#include <random>

using namespace nsp3d;

namespace
{
    Eigen::VectorXd mask_of(std::vector<double> sigma, std::size_t m_d, double tol = 1e-10)
    {
        return select_null_mask(sigma, m_d, tol);
    }
}

TEST_CASE("svd - simple inputs")
{
    const SvdResult id = svd(cmat::Identity(2, 2));
    CHECK(id.sigma.isApprox(Eigen::VectorXd::Ones(2)));

    const SvdResult z = svd(cmat::Zero(3, 4));
    CHECK(z.sigma.cwiseAbs().maxCoeff() == 0.0);
    CHECK(z.v.rows() == 4);
    CHECK((z.v.adjoint() * z.v - cmat::Identity(4, 4)).norm() < 1e-10);

    cmat bad = cmat::Ones(2, 2);
    bad(0, 1) = cplx(std::nan(""), 0.0);
    CHECK_THROWS_AS(svd(bad), numerical_error);
}

TEST_CASE("svd - reconstruction and unitarity on random matrices")
{
    std::mt19937_64 rng(21);
    for (auto [r, c] : {std::pair{3, 5}, std::pair{5, 3}, std::pair{1, 7}, std::pair{8, 8}})
    {
        const cmat a = oracle::random_matrix(rng, r, c);
        const SvdResult s = svd(a);
        REQUIRE(s.u.rows() == r);
        REQUIRE(s.u.cols() == r);
        REQUIRE(s.v.rows() == c);
        REQUIRE(s.v.cols() == c);
        cmat sigma = cmat::Zero(r, c);
        for (Eigen::Index i = 0; i < s.sigma.size(); ++i)
        {
            sigma(i, i) = s.sigma[i];
            if (i > 0)
                CHECK(s.sigma[i] <= s.sigma[i - 1]);
        }
        CHECK((a - s.u * sigma * s.v.adjoint()).norm() <= 1e-10 * a.norm());
        CHECK((s.u.adjoint() * s.u - cmat::Identity(r, r)).norm() < 1e-10);
        CHECK((s.v.adjoint() * s.v - cmat::Identity(c, c)).norm() < 1e-10);
    }
}

TEST_CASE("select_null_mask - threshold rule")
{
    CHECK(mask_of({5, 3, 0, 0}, 4) == Eigen::Vector4d(0, 0, 1, 1));
    CHECK(mask_of({0, 0}, 3) == Eigen::Vector3d(1, 1, 1));
    CHECK(mask_of({1, 1e-14}, 2) == Eigen::Vector2d(0, 1));
    CHECK(mask_of({1, 1e-9}, 2) == Eigen::Vector2d(0, 0));
    CHECK(mask_of({2}, 4) == Eigen::Vector4d(0, 1, 1, 1));
    CHECK(mask_of({}, 2) == Eigen::Vector2d(1, 1));

    CHECK_THROWS_AS(mask_of({1, 2}, 2), domain_error);
    CHECK_THROWS_AS(mask_of({1, -1}, 2), domain_error);
    CHECK_THROWS_AS(mask_of({3, 2, 1}, 2), shape_error);
}

TEST_CASE("null_projector - zero and empty constraint give identity")
{
    const Projector p = null_projector(cmat::Zero(3, 5));
    CHECK(p.rank() == 5);
    CHECK((p.matrix() - cmat::Identity(5, 5)).norm() < 1e-14);

    const Projector e = null_projector(cmat(0, 4));
    CHECK(e.rank() == 4);
    CHECK(e.matrix() == cmat::Identity(4, 4));
}

TEST_CASE("null_projector - single row matches the rank-one complement")
{
    std::mt19937_64 rng(8);
    for (int n : {2, 5, 16})
    {
        const cvec a = oracle::random_matrix(rng, n, 1).col(0);
        const Projector p = null_projector(a.adjoint());
        const cmat expected = cmat::Identity(n, n) - a * a.adjoint() / a.squaredNorm();
        CHECK(p.rank() == static_cast<std::size_t>(n - 1));
        CHECK((p.matrix() - expected).norm() < 1e-10);
    }
}

TEST_CASE("null_projector - random full-row-rank 3x8 against Gram-Schmidt")
{
    std::mt19937_64 rng(99);
    const cmat h = oracle::random_matrix(rng, 3, 8);
    const Projector p = null_projector(h);
    CHECK(p.rank() == 5);
    CHECK((h * p.matrix()).norm() <= 1e-8);
    CHECK((p.matrix() - oracle::complement_projector(h)).norm() <= 1e-8);
}

TEST_CASE("null_projector - axioms hold on steering constraint matrices")
{
    const UraGeometry g(40, 25);
    const NullSector sector{-45.0, -40.0, 5.0, 15.0, 1.0};
    for (Domain d : {Domain::azimuth, Domain::elevation})
    {
        const cmat h = sector_constraint_matrix(sector, g, d);
        const Projector p = null_projector(h);
        const ProjectorCheck c = check_projector(p);
        CHECK(c.hermitian <= 1e-12);
        CHECK(c.idempotent <= 1e-10);
        CHECK(c.eigen_range <= 1e-8);
        CHECK(c.trace_rank <= 1e-8);
        CHECK((h * p.matrix()).norm() <= 1e-8 * std::max(1.0, h.norm()));
        CHECK(p.rank() < g.size(d));
    }
}

TEST_CASE("null_projector - property: axioms, annihilation, oracle equivalence")
{
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> dim(2, 20);
    for (int trial = 0; trial < 60; ++trial)
    {
        const int m = dim(rng);
        const int k = std::uniform_int_distribution<int>(1, m - 1)(rng);
        const cmat h = oracle::random_matrix(rng, k, m);
        const Projector p = null_projector(h);
        const ProjectorCheck c = check_projector(p);
        CHECK(c.hermitian <= 1e-12);
        CHECK(c.idempotent <= 1e-10);
        CHECK(c.eigen_range <= 1e-8);
        CHECK(c.trace_rank <= 1e-8);
        CHECK(p.rank() == static_cast<std::size_t>(m - k));
        CHECK((h * p.matrix()).norm() <= 1e-8 * std::max(1.0, h.norm()));
        CHECK((p.matrix() - oracle::complement_projector(h)).norm() <= 1e-8);
    }
}

TEST_CASE("null_projector - property: adding a row never increases rank")
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial)
    {
        const int m = 3 + trial % 10;
        cmat h(0, m);
        std::size_t prev = static_cast<std::size_t>(m);
        for (int r = 0; r < 2 * m; ++r)
        {
            cmat next(h.rows() + 1, m);
            next.topRows(h.rows()) = h;
            // every third row duplicates an earlier one (rank stays put)
            next.row(h.rows()) = (r % 3 == 2) ? cmat(h.row(0)) : cmat(oracle::random_matrix(rng, 1, m));
            h = next;
            const std::size_t rank = null_projector(h).rank();
            CHECK(rank <= prev);
            prev = rank;
        }
        CHECK(prev == 0);
    }
}

TEST_CASE("project_covariance - examples")
{
    std::mt19937_64 rng(5);
    const cmat x = oracle::random_matrix(rng, 6, 6);
    const cmat r = x * x.adjoint();

    CHECK((project_covariance(Projector::identity(6), r) - r).norm() < 1e-12);
    CHECK(project_covariance(Projector(cmat::Zero(6, 6), 0, 0.0), r).norm() == 0.0);

    // rank-1 covariance built from a null-space vector passes through unchanged
    const cmat h = oracle::random_matrix(rng, 2, 6);
    const Projector p = null_projector(h);
    const cmat q = oracle::orthonormal_basis(oracle::complement_projector(h));
    const cvec a = q.col(0) * cplx(1.5, -0.5);
    const cmat ra = a * a.adjoint();
    CHECK((project_covariance(p, ra) - ra).norm() < 1e-10);

    const cmat pr = project_covariance(p, r);
    CHECK((pr - pr.adjoint()).norm() < 1e-10);
    CHECK(pr.trace().real() <= r.trace().real() + 1e-10);
    Eigen::SelfAdjointEigenSolver<cmat> eig(0.5 * (pr + pr.adjoint()));
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);

    CHECK_THROWS_AS(project_covariance(p, cmat::Identity(5, 5)), shape_error);
    cmat not_herm = r;
    not_herm(0, 1) += 1.0;
    CHECK_THROWS_AS(project_covariance(p, not_herm), domain_error);
    CHECK_THROWS_AS(project_covariance(p, -r), domain_error);
}
