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

#ifndef NSP3D_ARRAY_GEOMETRY_HPP
#define NSP3D_ARRAY_GEOMETRY_HPP

#include "error.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

namespace nsp3d
{
    using cplx = std::complex<double>;
    using cvec = Eigen::VectorXcd;
    using cmat = Eigen::MatrixXcd;

    inline constexpr double deg_to_rad = std::numbers::pi / 180.0;
    inline constexpr double rad_to_deg = 180.0 / std::numbers::pi;

    // Which factor of the rectangular array a quantity lives in
    enum class Domain
    {
        azimuth,   // M_h-dimensional, one entry per column of the URA
        elevation, // M_v-dimensional, one entry per row of the URA
        joint      // full M = M_h * M_v aperture
    };

    inline const char *to_string(Domain d)
    {
        switch (d)
        {
        case Domain::azimuth:
            return "azimuth";
        case Domain::elevation:
            return "elevation";
        default:
            return "joint";
        }
    }

    // Uniform rectangular array of the radar. Element spacing is in wavelengths.
    class UraGeometry
    {
    public:
        UraGeometry(std::size_t m_h, std::size_t m_v, double spacing = 0.5)
            : m_h_(m_h), m_v_(m_v), spacing_(spacing)
        {
            if (m_h == 0 || m_v == 0)
                throw domain_error("UraGeometry: element counts must be positive");
            if (!(spacing > 0.0) || !std::isfinite(spacing))
                throw domain_error("UraGeometry: spacing must be positive and finite");
        }

        std::size_t m_h() const noexcept { return m_h_; }
        std::size_t m_v() const noexcept { return m_v_; }
        double spacing() const noexcept { return spacing_; }
        std::size_t size() const noexcept { return m_h_ * m_v_; }

        // Element count of one factor domain
        std::size_t size(Domain d) const noexcept
        {
            switch (d)
            {
            case Domain::azimuth:
                return m_h_;
            case Domain::elevation:
                return m_v_;
            default:
                return size();
            }
        }

        bool operator==(const UraGeometry &) const = default;

    private:
        std::size_t m_h_;
        std::size_t m_v_;
        double spacing_;
    };

    // Uniform linear array of a base station
    class UlaGeometry
    {
    public:
        explicit UlaGeometry(std::size_t n = 1) : n_(n)
        {
            if (n == 0)
                throw domain_error("UlaGeometry: antenna count must be positive");
        }

        std::size_t n() const noexcept { return n_; }
        bool operator==(const UlaGeometry &) const = default;

    private:
        std::size_t n_;
    };

    // Direction in degrees: azimuth theta, elevation phi
    struct AngleDeg
    {
        double azimuth = 0.0;
        double elevation = 0.0;

        bool operator==(const AngleDeg &) const = default;
    };

    // Validates an angle at a public boundary: azimuth in [-180, 180], elevation in [-90, 90]
    inline AngleDeg checked_angle(AngleDeg a)
    {
        if (!std::isfinite(a.azimuth) || !std::isfinite(a.elevation))
            throw domain_error("angle must be finite");
        if (a.azimuth < -180.0 || a.azimuth > 180.0)
            throw domain_error("azimuth " + std::to_string(a.azimuth) + " outside [-180, 180]");
        if (a.elevation < -90.0 || a.elevation > 90.0)
            throw domain_error("elevation " + std::to_string(a.elevation) + " outside [-90, 90]");
        return a;
    }

    struct SteeringVector
    {
        cvec entries;
        Domain domain = Domain::joint;

        Eigen::Index size() const noexcept { return entries.size(); }
        const cplx &operator[](Eigen::Index i) const { return entries[i]; }
    };

    // Maps 1-based (row l, column k) of the URA to the 1-based element label s = (k-1) M_v + l.
    // The elevation index varies fastest.
    inline std::size_t linear_index(std::size_t l, std::size_t k, const UraGeometry &geometry)
    {
        if (l < 1 || l > geometry.m_v())
            throw bounds_error("linear_index: row l=" + std::to_string(l) + " outside 1.." + std::to_string(geometry.m_v()));
        if (k < 1 || k > geometry.m_h())
            throw bounds_error("linear_index: column k=" + std::to_string(k) + " outside 1.." + std::to_string(geometry.m_h()));
        return (k - 1) * geometry.m_v() + l;
    }

    // Phase progression exp(-j 2 pi n d cos(angle)) for n = 0..count-1.
    // The cos convention puts the zero-phase (broadside) direction at 90 degrees, so angles
    // with equal cosine (e.g. +theta and -theta) are indistinguishable to the array.
    inline cvec ula_response(std::size_t count, double angle_deg, double spacing)
    {
        if (!std::isfinite(angle_deg))
            throw domain_error("steering angle must be finite");
        const double step = -2.0 * std::numbers::pi * spacing * std::cos(angle_deg * deg_to_rad);
        cvec a(static_cast<Eigen::Index>(count));
        for (std::size_t n = 0; n < count; ++n)
            a[static_cast<Eigen::Index>(n)] = std::polar(1.0, step * static_cast<double>(n));
        if (count > 0)
            a[0] = cplx(1.0, 0.0);
        return a;
    }

    // a_h(theta), length M_h
    inline SteeringVector steering_azimuth(double theta_deg, const UraGeometry &geometry)
    {
        return {ula_response(geometry.m_h(), theta_deg, geometry.spacing()), Domain::azimuth};
    }

    // a_v(phi), length M_v
    inline SteeringVector steering_elevation(double phi_deg, const UraGeometry &geometry)
    {
        return {ula_response(geometry.m_v(), phi_deg, geometry.spacing()), Domain::elevation};
    }

    // Steering along one factor domain (azimuth or elevation)
    inline SteeringVector steering(Domain domain, double angle_deg, const UraGeometry &geometry)
    {
        if (domain == Domain::azimuth)
            return steering_azimuth(angle_deg, geometry);
        if (domain == Domain::elevation)
            return steering_elevation(angle_deg, geometry);
        throw domain_error("steering: joint domain needs two angles, use steering_joint");
    }

    // a_h(theta) kron a_v(phi), length M, ordered like linear_index
    inline SteeringVector steering_joint(double theta_deg, double phi_deg, const UraGeometry &geometry)
    {
        const cvec ah = ula_response(geometry.m_h(), theta_deg, geometry.spacing());
        const cvec av = ula_response(geometry.m_v(), phi_deg, geometry.spacing());
        const auto mv = static_cast<Eigen::Index>(geometry.m_v());
        cvec a(static_cast<Eigen::Index>(geometry.size()));
        for (Eigen::Index k = 0; k < ah.size(); ++k)
            for (Eigen::Index l = 0; l < mv; ++l)
                a[k * mv + l] = ah[k] * av[l];
        return {std::move(a), Domain::joint};
    }
}

#endif
