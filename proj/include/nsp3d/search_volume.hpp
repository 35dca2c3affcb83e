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

#ifndef NSP3D_SEARCH_VOLUME_HPP
#define NSP3D_SEARCH_VOLUME_HPP

// Radar search volume, in the rectangular-sector approximation Omega = theta * phi / 57.296^2.
// Nulled areas are carried in square degrees and subtracted before the conversion.

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace nsp3d
{
    inline constexpr double degrees_per_radian = 57.296;

    struct SearchExtent
    {
        double az_extent = 180.0; // degrees
        double el_extent = 110.0; // degrees

        void validate() const
        {
            if (!(az_extent > 0.0 && az_extent <= 360.0))
                throw domain_error("SearchExtent: azimuth extent must be in (0, 360]");
            if (!(el_extent > 0.0 && el_extent <= 180.0))
                throw domain_error("SearchExtent: elevation extent must be in (0, 180]");
        }

        double area_deg2() const noexcept { return az_extent * el_extent; }
        bool operator==(const SearchExtent &) const = default;
    };

    struct SearchVolumeReport
    {
        double omega_sr = 0.0;
        double omega_nsp_sr = 0.0;
        double null_deg2 = 0.0;
        double percent_searchable = 100.0;
    };

    // Physical extent of the protected BS region, used to turn a standoff distance into a nulled area
    struct BsRegion
    {
        double width_m = 0.0;
        double height_min_m = 0.0;
        double height_max_m = 0.0;

        bool operator==(const BsRegion &) const = default;
    };

    inline double solid_angle(const SearchExtent &extent)
    {
        extent.validate();
        return extent.az_extent * extent.el_extent / (degrees_per_radian * degrees_per_radian);
    }

    inline SearchVolumeReport nsp_solid_angle(const SearchExtent &extent, double null_deg2)
    {
        extent.validate();
        const double full = extent.area_deg2();
        if (!(null_deg2 >= 0.0 && null_deg2 <= full))
            throw domain_error("nsp_solid_angle: nulled area " + std::to_string(null_deg2) + " deg^2 outside [0, " +
                               std::to_string(full) + "]");
        SearchVolumeReport r;
        r.omega_sr = full / (degrees_per_radian * degrees_per_radian);
        r.omega_nsp_sr = (full - null_deg2) / (degrees_per_radian * degrees_per_radian);
        r.null_deg2 = null_deg2;
        r.percent_searchable = 100.0 * (full - null_deg2) / full;
        return r;
    }

    // Angular area subtended by the region at a standoff distance:
    // az span 2 atan(w / 2d), el span atan(h_max / d) - atan(h_min / d), in degrees.
    inline double null_extent_from_geometry(const BsRegion &region, double standoff_m)
    {
        if (!(standoff_m > 0.0) || !std::isfinite(standoff_m))
            throw domain_error("null_extent_from_geometry: standoff distance must be positive");
        if (!(region.width_m >= 0.0))
            throw domain_error("null_extent_from_geometry: region width must be non-negative");
        if (!(region.height_max_m >= region.height_min_m))
            throw domain_error("null_extent_from_geometry: height_max < height_min");
        constexpr double to_deg = 180.0 / std::numbers::pi;
        const double az = 2.0 * std::atan(region.width_m / (2.0 * standoff_m)) * to_deg;
        const double el = (std::atan(region.height_max_m / standoff_m) - std::atan(region.height_min_m / standoff_m)) * to_deg;
        return az * el;
    }

    struct SweepPoint
    {
        double distance_m = 0.0;
        double percent_searchable = 100.0;
    };

    // Percent searchable at each distance. The nulled area is capped at the full extent.
    inline std::vector<SweepPoint> distance_sweep(const SearchExtent &extent, const BsRegion &region,
                                                  const std::vector<double> &distances)
    {
        extent.validate();
        std::vector<SweepPoint> out;
        out.reserve(distances.size());
        for (double d : distances)
        {
            const double null_deg2 = std::min(null_extent_from_geometry(region, d), extent.area_deg2());
            out.push_back({d, nsp_solid_angle(extent, null_deg2).percent_searchable});
        }
        return out;
    }

    // Region width that makes percent_searchable(anchor_distance) equal anchor_percent,
    // keeping the region's heights fixed.
    inline double calibrate_region_width(const SearchExtent &extent, const BsRegion &region, double anchor_distance_m,
                                         double anchor_percent)
    {
        extent.validate();
        if (!(anchor_percent >= 0.0 && anchor_percent <= 100.0))
            throw domain_error("calibrate_region_width: anchor percent outside [0, 100]");
        if (!(anchor_distance_m > 0.0) || !std::isfinite(anchor_distance_m))
            throw domain_error("calibrate_region_width: anchor distance must be positive");

        constexpr double to_deg = 180.0 / std::numbers::pi;
        const double el = (std::atan(region.height_max_m / anchor_distance_m) - std::atan(region.height_min_m / anchor_distance_m)) * to_deg;
        const double needed = (1.0 - anchor_percent / 100.0) * extent.area_deg2();
        if (needed == 0.0)
            return 0.0;
        if (!(el > 0.0))
            throw domain_error("calibrate_region_width: region has zero elevation span");
        const double az = needed / el;
        if (!(az < 180.0))
            throw domain_error("calibrate_region_width: anchor needs an azimuth span of " + std::to_string(az) +
                               " deg, which no finite region width can reach");
        return 2.0 * anchor_distance_m * std::tan(az / 2.0 / to_deg);
    }
}

#endif
