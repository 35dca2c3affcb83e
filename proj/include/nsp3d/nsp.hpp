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

#ifndef NSP3D_NSP_HPP
#define NSP3D_NSP_HPP

#include "array_geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace nsp3d
{
    inline constexpr double default_nsp_tolerance = 1e-10;

    // A = U diag(sigma) V^H with square U and V
    struct SvdResult
    {
        cmat u;
        Eigen::VectorXd sigma; // descending, length min(rows, cols)
        cmat v;                // right singular vectors as columns
    };

    namespace detail
    {
        inline void require_finite(const cmat &a, const char *who)
        {
            if (!a.allFinite())
                throw numerical_error(std::string(who) + ": matrix has non-finite entries");
        }
    }

    // Full SVD. Throws numerical_error instead of returning a partial decomposition.
    inline SvdResult svd(const cmat &a)
    {
        detail::require_finite(a, "svd");
        if (a.rows() == 0 || a.cols() == 0)
            return {cmat::Identity(a.rows(), a.rows()), Eigen::VectorXd(0), cmat::Identity(a.cols(), a.cols())};

        Eigen::JacobiSVD<cmat> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
        if (dec.info() != Eigen::Success)
            throw numerical_error("svd: decomposition did not converge");
        return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
    }

    // 0/1 selector over the m_d right-singular directions: 0 for the q directions with
    // sigma_u > tol_rel * sigma_1, 1 for the rest (including the m_d - p directions that
    // have no singular value at all).
    inline Eigen::VectorXd select_null_mask(std::span<const double> sigma, std::size_t m_d, double tol_rel = default_nsp_tolerance)
    {
        if (sigma.size() > m_d)
            throw shape_error("select_null_mask: more singular values than dimensions");
        if (!(tol_rel >= 0.0))
            throw domain_error("select_null_mask: tolerance must be non-negative");
        for (std::size_t i = 0; i < sigma.size(); ++i)
        {
            if (!(sigma[i] >= 0.0))
                throw domain_error("select_null_mask: singular values must be non-negative");
            if (i > 0 && sigma[i] > sigma[i - 1])
                throw domain_error("select_null_mask: singular values not sorted in descending order");
        }

        std::size_t q = 0;
        if (!sigma.empty() && sigma[0] > 0.0)
        {
            const double cut = tol_rel * sigma[0];
            q = static_cast<std::size_t>(std::count_if(sigma.begin(), sigma.end(), [cut](double s)
                                                       { return s > cut; }));
        }
        Eigen::VectorXd mask = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m_d));
        mask.head(static_cast<Eigen::Index>(q)).setZero();
        return mask;
    }

    // Orthogonal projector onto a subspace. Instances produced by null_projector are
    // Hermitian and idempotent up to rounding; `rank` is the dimension of the subspace.
    class Projector
    {
    public:
        Projector(cmat matrix, std::size_t rank, double tol)
            : matrix_(std::move(matrix)), rank_(rank), tol_(tol)
        {
            if (matrix_.rows() != matrix_.cols())
                throw shape_error("Projector: matrix must be square");
        }

        static Projector identity(std::size_t dim)
        {
            const auto n = static_cast<Eigen::Index>(dim);
            return {cmat::Identity(n, n), dim, 0.0};
        }

        const cmat &matrix() const noexcept { return matrix_; }
        std::size_t rank() const noexcept { return rank_; }
        double tolerance() const noexcept { return tol_; }
        Eigen::Index dim() const noexcept { return matrix_.rows(); }

    private:
        cmat matrix_;
        std::size_t rank_;
        double tol_;
    };

    // Projector onto the null space of h (K x M_d): P = V diag(mask) V^H.
    // An empty or all-zero h yields the identity.
    inline Projector null_projector(const cmat &h, double tol_rel = default_nsp_tolerance)
    {
        detail::require_finite(h, "null_projector");
        const auto m_d = h.cols();
        if (h.rows() == 0)
            return {cmat::Identity(m_d, m_d), static_cast<std::size_t>(m_d), tol_rel};

        Eigen::JacobiSVD<cmat> dec(h, Eigen::ComputeFullV);
        if (dec.info() != Eigen::Success)
            throw numerical_error("null_projector: SVD did not converge");

        const Eigen::VectorXd &s = dec.singularValues();
        const Eigen::VectorXd mask = select_null_mask(std::span<const double>(s.data(), static_cast<std::size_t>(s.size())),
                                                      static_cast<std::size_t>(m_d), tol_rel);
        const auto rank = static_cast<Eigen::Index>(mask.sum() + 0.5);
        const cmat basis = dec.matrixV().rightCols(rank);
        cmat p = basis * basis.adjoint();
        p = (0.5 * (p + p.adjoint())).eval();
        return {std::move(p), static_cast<std::size_t>(rank), tol_rel};
    }

    // P R P^H. The conjugate transpose keeps the result Hermitian PSD for complex data.
    inline cmat project_covariance(const Projector &p, const cmat &r)
    {
        if (r.rows() != p.dim() || r.cols() != p.dim())
            throw shape_error("project_covariance: covariance is " + std::to_string(r.rows()) + "x" + std::to_string(r.cols()) +
                              ", projector is " + std::to_string(p.dim()) + "x" + std::to_string(p.dim()));
        detail::require_finite(r, "project_covariance");
        const double scale = std::max(1.0, r.norm());
        if ((r - r.adjoint()).norm() > 1e-10 * scale)
            throw domain_error("project_covariance: covariance is not Hermitian");
        if (r.rows() > 0)
        {
            Eigen::SelfAdjointEigenSolver<cmat> eig(r, Eigen::EigenvaluesOnly);
            if (eig.eigenvalues().minCoeff() < -1e-10 * scale)
                throw domain_error("project_covariance: covariance is not positive semi-definite");
        }
        return p.matrix() * r * p.matrix().adjoint();
    }

    // Deviations from the projector axioms, for diagnostics and tests
    struct ProjectorCheck
    {
        double hermitian = 0.0;   // max |P - P^H|
        double idempotent = 0.0;  // ||P^2 - P||_F
        double eigen_range = 0.0; // max distance of an eigenvalue from {0, 1}
        double trace_rank = 0.0;  // |tr(P) - rank|
    };

    inline ProjectorCheck check_projector(const Projector &p)
    {
        const cmat &m = p.matrix();
        ProjectorCheck c;
        c.hermitian = (m - m.adjoint()).cwiseAbs().maxCoeff();
        c.idempotent = (m * m - m).norm();
        c.trace_rank = std::abs(m.trace() - static_cast<double>(p.rank()));
        const cmat herm = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<cmat> eig(herm, Eigen::EigenvaluesOnly);
        for (double ev : eig.eigenvalues())
            c.eigen_range = std::max(c.eigen_range, std::min(std::abs(ev), std::abs(ev - 1.0)));
        return c;
    }
}

#endif
