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

#ifndef NSP3D_BEAMFORM_HPP
#define NSP3D_BEAMFORM_HPP

#include "channel.hpp"
#include "nsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace nsp3d
{
    // Per-domain waveform covariances R_Elv (M_v x M_v) and R_Azm (M_h x M_h)
    struct CovariancePair
    {
        cmat r_elv;
        cmat r_azm;
    };

    // M_h x M_v cross matrix R_NSP and the target it was steered to
    struct NspCovariance
    {
        cmat matrix;
        AngleDeg target;
    };

    // Sampled beampattern in dB; gain_db is indexed (elevation, azimuth)
    struct BeampatternGrid
    {
        std::vector<double> az_samples;
        std::vector<double> el_samples;
        Eigen::MatrixXd gain_db;
        double peak_db = 0.0;
        AngleDeg peak_angle;
        double floor_db = -200.0;
        double offset_db = 0.0; // added to 20 log10 G before clamping
    };

    struct BeampatternOptions
    {
        std::optional<double> peak_normalization_db; // pin the peak to this level
        double floor_db = -200.0;
        unsigned threads = 0; // 0 = hardware concurrency
    };

    struct SectorMetrics
    {
        double max_db = 0.0;
        double mean_db = 0.0;
        double peak_to_sector_db = 0.0;
        std::size_t points = 0;
    };

    // a a^H for the steering vector of one factor domain; rank 1, trace M_d
    inline cmat steered_covariance(Domain domain, double angle_deg, const UraGeometry &geometry)
    {
        const cvec a = steering(domain, angle_deg, geometry).entries;
        return a * a.adjoint();
    }

    inline CovariancePair steered_covariances(AngleDeg target, const UraGeometry &geometry)
    {
        return {steered_covariance(Domain::elevation, target.elevation, geometry),
                steered_covariance(Domain::azimuth, target.azimuth, geometry)};
    }

    // R_NSP = R_Azm^Null a_h a_v^H R_Elv + R_Azm a_h a_v^H R_Elv^Null, with
    // R^Null = P R P^H in each domain and a_h, a_v steered at the target.
    inline NspCovariance combine_nsp_covariance(const CovariancePair &cov, const Projector &p_h, const Projector &p_v,
                                                AngleDeg target, const UraGeometry &geometry)
    {
        const auto mh = static_cast<Eigen::Index>(geometry.m_h());
        const auto mv = static_cast<Eigen::Index>(geometry.m_v());
        if (p_h.dim() != mh || p_v.dim() != mv)
            throw shape_error("combine_nsp_covariance: projector dimensions do not match the array");
        if (cov.r_azm.rows() != mh || cov.r_azm.cols() != mh || cov.r_elv.rows() != mv || cov.r_elv.cols() != mv)
            throw shape_error("combine_nsp_covariance: covariance dimensions do not match the array");

        const cmat r_azm_null = project_covariance(p_h, cov.r_azm);
        const cmat r_elv_null = project_covariance(p_v, cov.r_elv);
        const cvec ah = steering_azimuth(target.azimuth, geometry).entries;
        const cvec av = steering_elevation(target.elevation, geometry).entries;
        const cmat cross = ah * av.adjoint();

        cmat r = r_azm_null * cross * cov.r_elv + cov.r_azm * cross * r_elv_null;
        return {std::move(r), target};
    }

    // Unprojected reference: both projectors are the identity
    inline NspCovariance combine_unprojected(const CovariancePair &cov, AngleDeg target, const UraGeometry &geometry)
    {
        return combine_nsp_covariance(cov, Projector::identity(geometry.m_h()), Projector::identity(geometry.m_v()), target, geometry);
    }

    // G(theta, phi) = |a_h(theta)^H R_NSP a_v(phi)|, linear magnitude
    inline double beampattern_gain(const NspCovariance &r, double theta_deg, double phi_deg, const UraGeometry &geometry)
    {
        const cvec ah = steering_azimuth(theta_deg, geometry).entries;
        const cvec av = steering_elevation(phi_deg, geometry).entries;
        cplx acc{0.0, 0.0};
        for (Eigen::Index k = 0; k < ah.size(); ++k)
        {
            cplx w{0.0, 0.0};
            for (Eigen::Index l = 0; l < av.size(); ++l)
                w += r.matrix(k, l) * av[l];
            acc += std::conj(ah[k]) * w;
        }
        return std::abs(acc);
    }

    namespace detail
    {
        // Exact ties (the cos steering makes +x and -x indistinguishable) resolve toward
        // non-negative elevation, then non-negative azimuth, then scan order.
        inline bool preferred_peak(double el, double az, double best_el, double best_az)
        {
            if ((el >= 0.0) != (best_el >= 0.0))
                return el >= 0.0;
            if ((az >= 0.0) != (best_az >= 0.0))
                return az >= 0.0;
            return false;
        }
    }

    // Evaluates the beampattern on the az x el grid. Each grid point is computed independently;
    // rows are distributed over threads but the per-point arithmetic is fixed.
    inline BeampatternGrid beampattern(const NspCovariance &r, const std::vector<double> &az_samples,
                                       const std::vector<double> &el_samples, const UraGeometry &geometry,
                                       const BeampatternOptions &options = {})
    {
        if (az_samples.empty() || el_samples.empty())
            throw domain_error("beampattern: sample lists must be non-empty");
        const auto mh = static_cast<Eigen::Index>(geometry.m_h());
        const auto mv = static_cast<Eigen::Index>(geometry.m_v());
        if (r.matrix.rows() != mh || r.matrix.cols() != mv)
            throw shape_error("beampattern: R_NSP must be M_h x M_v");

        const auto n_az = static_cast<Eigen::Index>(az_samples.size());
        const auto n_el = static_cast<Eigen::Index>(el_samples.size());

        // Conjugated azimuth steering, one column per azimuth sample
        cmat ah_conj(mh, n_az);
        for (Eigen::Index i = 0; i < n_az; ++i)
            ah_conj.col(i) = steering_azimuth(az_samples[static_cast<std::size_t>(i)], geometry).entries.conjugate();

        Eigen::MatrixXd mag(n_el, n_az);
        auto eval_rows = [&](Eigen::Index begin, Eigen::Index end)
        {
            for (Eigen::Index e = begin; e < end; ++e)
            {
                const cvec av = steering_elevation(el_samples[static_cast<std::size_t>(e)], geometry).entries;
                cvec w(mh);
                for (Eigen::Index k = 0; k < mh; ++k)
                {
                    cplx acc{0.0, 0.0};
                    for (Eigen::Index l = 0; l < mv; ++l)
                        acc += r.matrix(k, l) * av[l];
                    w[k] = acc;
                }
                for (Eigen::Index i = 0; i < n_az; ++i)
                {
                    cplx acc{0.0, 0.0};
                    for (Eigen::Index k = 0; k < mh; ++k)
                        acc += ah_conj(k, i) * w[k];
                    mag(e, i) = std::abs(acc);
                }
            }
        };

        unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<Eigen::Index>(threads, n_el));
        if (threads <= 1 || n_el * n_az * mh * mv < 100000)
            eval_rows(0, n_el);
        else
        {
            std::vector<std::jthread> pool;
            const Eigen::Index chunk = (n_el + threads - 1) / threads;
            for (Eigen::Index b = 0; b < n_el; b += chunk)
                pool.emplace_back(eval_rows, b, std::min(n_el, b + chunk));
        }

        if (!mag.allFinite())
            throw numerical_error("beampattern: non-finite gain");

        BeampatternGrid grid;
        grid.az_samples = az_samples;
        grid.el_samples = el_samples;
        grid.floor_db = options.floor_db;

        const double max_mag = mag.maxCoeff();
        if (options.peak_normalization_db && max_mag > 0.0)
            grid.offset_db = *options.peak_normalization_db - 20.0 * std::log10(max_mag);

        grid.gain_db.resize(n_el, n_az);
        for (Eigen::Index e = 0; e < n_el; ++e)
            for (Eigen::Index i = 0; i < n_az; ++i)
            {
                const double m = mag(e, i);
                const double db = m > 0.0 ? 20.0 * std::log10(m) + grid.offset_db : -std::numeric_limits<double>::infinity();
                grid.gain_db(e, i) = std::max(db, grid.floor_db);
            }

        grid.peak_db = grid.gain_db.maxCoeff();
        bool found = false;
        for (Eigen::Index i = 0; i < n_az; ++i)
            for (Eigen::Index e = 0; e < n_el; ++e)
            {
                if (grid.gain_db(e, i) != grid.peak_db)
                    continue;
                const double az = az_samples[static_cast<std::size_t>(i)];
                const double el = el_samples[static_cast<std::size_t>(e)];
                if (!found || detail::preferred_peak(el, az, grid.peak_angle.elevation, grid.peak_angle.azimuth))
                {
                    grid.peak_angle = {az, el};
                    found = true;
                }
            }
        return grid;
    }

    // Statistics of the grid points falling inside a sector
    inline SectorMetrics sector_metrics(const BeampatternGrid &grid, const NullSector &sector)
    {
        SectorMetrics m;
        m.max_db = -std::numeric_limits<double>::infinity();
        double sum = 0.0;
        for (std::size_t i = 0; i < grid.az_samples.size(); ++i)
            for (std::size_t e = 0; e < grid.el_samples.size(); ++e)
            {
                if (!sector.contains(grid.az_samples[i], grid.el_samples[e]))
                    continue;
                const double v = grid.gain_db(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(i));
                m.max_db = std::max(m.max_db, v);
                sum += v;
                ++m.points;
            }
        if (m.points == 0)
            throw domain_error("sector_metrics: sector az [" + std::to_string(sector.az_min) + ", " + std::to_string(sector.az_max) +
                               "] x el [" + std::to_string(sector.el_min) + ", " + std::to_string(sector.el_max) +
                               "] contains no grid point");
        m.mean_db = sum / static_cast<double>(m.points);
        m.peak_to_sector_db = grid.peak_db - m.max_db;
        return m;
    }
}

#endif
