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

#ifndef NSP3D_CHANNEL_HPP
#define NSP3D_CHANNEL_HPP

// Line-of-sight interference channel between the radar URA and base-station ULAs.
//
// Element labelling follows linear_index: s = (k-1) M_v + l, so stepping s by M_v moves one
// column (azimuth neighbour) and carries the azimuth phase exp(-j 2 pi d cos(theta)); stepping
// by one inside a column carries the elevation phase exp(-j 2 pi d cos(phi)).

#include "array_geometry.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace nsp3d
{
    struct BsDescriptor
    {
        AngleDeg angle;                // direction of the BS seen from the radar
        UlaGeometry array;             // BS antenna array
        cplx path_gain{1.0, 0.0};      // complex LoS gain
        double bs_side_angle = 90.0;   // direction of the radar seen from the BS array (90 = zero phase)
        double bs_spacing = 0.5;       // BS element spacing in wavelengths

        void validate() const
        {
            checked_angle(angle);
            if (!(std::abs(path_gain) > 0.0) || !std::isfinite(std::abs(path_gain)))
                throw domain_error("BsDescriptor: path gain must be non-zero and finite");
            if (!std::isfinite(bs_side_angle))
                throw domain_error("BsDescriptor: bs_side_angle must be finite");
            if (!(bs_spacing > 0.0))
                throw domain_error("BsDescriptor: spacing must be positive");
        }

        bool operator==(const BsDescriptor &) const = default;
    };

    // Rectangular azimuth x elevation region to be suppressed, sampled at `step` degrees
    struct NullSector
    {
        double az_min = 0.0, az_max = 0.0;
        double el_min = 0.0, el_max = 0.0;
        double step = 1.0;

        void validate() const
        {
            if (!std::isfinite(az_min) || !std::isfinite(az_max) || !std::isfinite(el_min) || !std::isfinite(el_max))
                throw domain_error("NullSector: bounds must be finite");
            if (az_min > az_max)
                throw domain_error("NullSector: az_min > az_max");
            if (el_min > el_max)
                throw domain_error("NullSector: el_min > el_max");
            if (!(step > 0.0) || !std::isfinite(step))
                throw domain_error("NullSector: step must be positive");
        }

        // Inclusive containment test with a small tolerance for accumulated grid values
        bool contains(double az, double el) const noexcept
        {
            constexpr double eps = 1e-9;
            return az >= az_min - eps && az <= az_max + eps && el >= el_min - eps && el <= el_max + eps;
        }

        // Angular area in square degrees
        double area_deg2() const noexcept { return (az_max - az_min) * (el_max - el_min); }

        bool operator==(const NullSector &) const = default;
    };

    // Column ordering of a ChannelMatrix
    enum class ColumnLayout
    {
        elevation_fastest, // H_h = a_h^T kron H_{k=1}; column (k-1) M_v + l
        azimuth_fastest    // H_v = a_v^T kron H_{l=1}; column (l-1) M_h + k
    };

    // N x M complex channel with its block partition
    struct ChannelMatrix
    {
        cmat entries;
        std::size_t m_h = 1;
        std::size_t m_v = 1;
        ColumnLayout layout = ColumnLayout::elevation_fastest;

        Eigen::Index rows() const noexcept { return entries.rows(); }
        Eigen::Index cols() const noexcept { return entries.cols(); }

        // Coefficient between BS antenna u and radar element (row l, column k), all zero-based
        const cplx &at(Eigen::Index u, std::size_t l, std::size_t k) const
        {
            const auto col = layout == ColumnLayout::elevation_fastest ? k * m_v + l : l * m_h + k;
            return entries(u, static_cast<Eigen::Index>(col));
        }
    };

    // LoS block spanning one factor domain: path_gain * c * a^T, where c is the BS-side ULA
    // response and a the radar steering toward the BS. Domain::elevation gives the N x M_v block
    // H_{k=1}; Domain::azimuth gives the N x M_h block H_{l=1}.
    inline cmat build_base_submatrix(const BsDescriptor &bs, const UraGeometry &radar, Domain domain = Domain::elevation)
    {
        bs.validate();
        const cvec c = ula_response(bs.array.n(), bs.bs_side_angle, bs.bs_spacing);
        cvec a;
        if (domain == Domain::elevation)
            a = steering_elevation(bs.angle.elevation, radar).entries;
        else if (domain == Domain::azimuth)
            a = steering_azimuth(bs.angle.azimuth, radar).entries;
        else
            throw domain_error("build_base_submatrix: domain must be azimuth or elevation");
        return bs.path_gain * (c * a.transpose());
    }

    // H_h = a_h(theta_b)^T kron base, base of size N x M_v
    inline ChannelMatrix assemble_azimuth_partition(const cmat &base, double theta_b_deg, const UraGeometry &radar)
    {
        const auto mv = static_cast<Eigen::Index>(radar.m_v());
        if (base.cols() != mv)
            throw shape_error("assemble_azimuth_partition: base has " + std::to_string(base.cols()) +
                              " columns, expected M_v = " + std::to_string(mv));
        const cvec ah = steering_azimuth(theta_b_deg, radar).entries;
        ChannelMatrix h{cmat(base.rows(), static_cast<Eigen::Index>(radar.size())), radar.m_h(), radar.m_v(),
                        ColumnLayout::elevation_fastest};
        for (Eigen::Index k = 0; k < ah.size(); ++k)
            h.entries.middleCols(k * mv, mv) = ah[k] * base;
        return h;
    }

    // H_v = a_v(phi_b)^T kron base, base of size N x M_h
    inline ChannelMatrix assemble_elevation_partition(const cmat &base, double phi_b_deg, const UraGeometry &radar)
    {
        const auto mh = static_cast<Eigen::Index>(radar.m_h());
        if (base.cols() != mh)
            throw shape_error("assemble_elevation_partition: base has " + std::to_string(base.cols()) +
                              " columns, expected M_h = " + std::to_string(mh));
        const cvec av = steering_elevation(phi_b_deg, radar).entries;
        ChannelMatrix h{cmat(base.rows(), static_cast<Eigen::Index>(radar.size())), radar.m_h(), radar.m_v(),
                        ColumnLayout::azimuth_fastest};
        for (Eigen::Index l = 0; l < av.size(); ++l)
            h.entries.middleCols(l * mh, mh) = av[l] * base;
        return h;
    }

    // Full LoS channel of one BS in the azimuth-partitioned (linear_index) layout
    inline ChannelMatrix los_channel(const BsDescriptor &bs, const UraGeometry &radar)
    {
        return assemble_azimuth_partition(build_base_submatrix(bs, radar, Domain::elevation), bs.angle.azimuth, radar);
    }

    // Samples lo, lo+step, ... up to hi; hi is always included. A degenerate range yields one sample.
    inline std::vector<double> sample_range(double lo, double hi, double step)
    {
        if (!(step > 0.0))
            throw domain_error("sample_range: step must be positive");
        if (lo > hi)
            throw domain_error("sample_range: lo > hi");
        std::vector<double> out;
        if (lo == hi)
            return {lo};
        constexpr double eps = 1e-9;
        const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + eps));
        out.reserve(n + 2);
        for (std::size_t i = 0; i <= n; ++i)
            out.push_back(lo + static_cast<double>(i) * step);
        if (out.back() < hi - eps * step)
            out.push_back(hi);
        else
            out.back() = hi;
        return out;
    }

    // Rows are a(angle_i)^H for the sector's sampled azimuths (or elevations)
    inline cmat sector_constraint_matrix(const NullSector &sector, const UraGeometry &radar, Domain domain)
    {
        sector.validate();
        std::vector<double> angles;
        if (domain == Domain::azimuth)
            angles = sample_range(sector.az_min, sector.az_max, sector.step);
        else if (domain == Domain::elevation)
            angles = sample_range(sector.el_min, sector.el_max, sector.step);
        else
            throw domain_error("sector_constraint_matrix: domain must be azimuth or elevation");

        cmat c(static_cast<Eigen::Index>(angles.size()), static_cast<Eigen::Index>(radar.size(domain)));
        for (std::size_t i = 0; i < angles.size(); ++i)
            c.row(static_cast<Eigen::Index>(i)) = steering(domain, angles[i], radar).entries.adjoint();
        return c;
    }

    // Vertical concatenation of channels sharing the same radar partition
    inline ChannelMatrix stack_channels(std::span<const ChannelMatrix> parts)
    {
        if (parts.empty())
            throw shape_error("stack_channels: nothing to stack");
        const ChannelMatrix &first = parts.front();
        Eigen::Index rows = 0;
        for (const auto &p : parts)
        {
            if (p.cols() != first.cols() || p.m_h != first.m_h || p.m_v != first.m_v || p.layout != first.layout)
                throw shape_error("stack_channels: column count or partition mismatch");
            rows += p.rows();
        }
        ChannelMatrix out{cmat(rows, first.cols()), first.m_h, first.m_v, first.layout};
        Eigen::Index r = 0;
        for (const auto &p : parts)
        {
            out.entries.middleRows(r, p.rows()) = p.entries;
            r += p.rows();
        }
        return out;
    }

    // Factor-domain constraint rows extracted from a channel. For Domain::azimuth each (u, l)
    // pair contributes the row conj(H[u, (l, k)]) over k = 1..M_h, likewise for elevation.
    // Conjugation puts the channel's transmit-side direction into the same a^H form that the
    // sector constraints and the beampattern use, so the resulting nulls land at the BS angle.
    inline cmat channel_constraint_matrix(const ChannelMatrix &h, Domain domain)
    {
        if (static_cast<std::size_t>(h.cols()) != h.m_h * h.m_v)
            throw shape_error("channel_constraint_matrix: column count does not match partition");
        if (domain != Domain::azimuth && domain != Domain::elevation)
            throw domain_error("channel_constraint_matrix: domain must be azimuth or elevation");

        const bool az = domain == Domain::azimuth;
        const std::size_t width = az ? h.m_h : h.m_v;
        const std::size_t other = az ? h.m_v : h.m_h;
        cmat c(h.rows() * static_cast<Eigen::Index>(other), static_cast<Eigen::Index>(width));
        for (Eigen::Index u = 0; u < h.rows(); ++u)
            for (std::size_t o = 0; o < other; ++o)
            {
                const auto row = u * static_cast<Eigen::Index>(other) + static_cast<Eigen::Index>(o);
                for (std::size_t w = 0; w < width; ++w)
                    c(row, static_cast<Eigen::Index>(w)) = std::conj(az ? h.at(u, o, w) : h.at(u, w, o));
            }
        return c;
    }
}

#endif
