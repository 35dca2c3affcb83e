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

#ifndef NSP3D_PIPELINE_HPP
#define NSP3D_PIPELINE_HPP

// End-to-end run of a scenario: constraints -> projectors -> R_NSP -> beampattern -> metrics,
// plus the on-disk artifacts (beampattern.csv, summary.json, search_volume.csv).

#include "beamform.hpp"
#include "channel.hpp"
#include "nsp.hpp"
#include "scenario.hpp"
#include "search_volume.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace nsp3d
{
    struct RunOptions
    {
        bool nsp = true;                     // false: identity projectors (A/B reference)
        std::optional<double> tol_override;  // replaces the scenario's nsp tolerance
        unsigned threads = 0;                // beampattern worker threads, 0 = auto
    };

    struct SearchSummary
    {
        SearchVolumeReport sector_report; // scenario's own null sectors against the extent
        std::optional<double> region_width_m;
        std::vector<SweepPoint> sweep;
    };

    struct RunSummary
    {
        double peak_db = 0.0;
        AngleDeg peak_angle;
        std::vector<std::pair<NullSector, SectorMetrics>> sectors;
        std::size_t rank_azimuth = 0;
        std::size_t rank_elevation = 0;
        bool nsp_enabled = true;
        std::optional<SearchSummary> search;
        double wall_clock_s = 0.0; // reported on the console only, never written to the artifacts
    };

    struct RunResult
    {
        RunSummary summary;
        BeampatternGrid grid;
    };

    // Stacks every azimuth (or elevation) constraint of the scenario: sampled sector steering rows
    // followed by the factor rows of each explicit BS channel.
    inline cmat scenario_constraints(const Scenario &sc, Domain domain)
    {
        std::vector<cmat> blocks;
        for (const auto &s : sc.null_sectors)
            blocks.push_back(sector_constraint_matrix(s, sc.radar, domain));
        for (const auto &b : sc.bs_list)
            blocks.push_back(channel_constraint_matrix(los_channel(b, sc.radar), domain));

        Eigen::Index rows = 0;
        for (const auto &b : blocks)
            rows += b.rows();
        cmat c(rows, static_cast<Eigen::Index>(sc.radar.size(domain)));
        Eigen::Index r = 0;
        for (const auto &b : blocks)
        {
            c.middleRows(r, b.rows()) = b;
            r += b.rows();
        }
        return c;
    }

    inline SearchSummary evaluate_search(const Scenario &sc)
    {
        const SearchSpec &spec = *sc.search;
        SearchSummary out;
        double sector_area = 0.0;
        for (const auto &s : sc.null_sectors)
            sector_area += s.area_deg2();
        out.sector_report = nsp_solid_angle(spec.extent, std::min(sector_area, spec.extent.area_deg2()));

        if (!spec.null_deg2.empty())
        {
            for (std::size_t i = 0; i < spec.distances.size(); ++i)
                out.sweep.push_back({spec.distances[i], nsp_solid_angle(spec.extent, spec.null_deg2[i]).percent_searchable});
            return out;
        }
        BsRegion region = spec.region;
        if (spec.calibrate_distance_m)
            region.width_m = calibrate_region_width(spec.extent, region, *spec.calibrate_distance_m, *spec.calibrate_percent);
        out.region_width_m = region.width_m;
        out.sweep = distance_sweep(spec.extent, region, spec.distances);
        return out;
    }

    inline RunResult run_pipeline(const Scenario &sc, const RunOptions &opt = {})
    {
        const auto t0 = std::chrono::steady_clock::now();
        const double tol = opt.tol_override.value_or(sc.nsp_tolerance);

        Projector p_h = Projector::identity(sc.radar.m_h());
        Projector p_v = Projector::identity(sc.radar.m_v());
        if (opt.nsp)
        {
            p_h = null_projector(scenario_constraints(sc, Domain::azimuth), tol);
            p_v = null_projector(scenario_constraints(sc, Domain::elevation), tol);
        }

        const CovariancePair cov = steered_covariances(sc.target, sc.radar);
        const NspCovariance r = combine_nsp_covariance(cov, p_h, p_v, sc.target, sc.radar);

        BeampatternOptions bo;
        bo.peak_normalization_db = sc.peak_normalization_db;
        bo.threads = opt.threads;
        RunResult out;
        out.grid = beampattern(r, sample_range(sc.grid.az_min, sc.grid.az_max, sc.grid.az_step),
                               sample_range(sc.grid.el_min, sc.grid.el_max, sc.grid.el_step), sc.radar, bo);

        RunSummary &s = out.summary;
        s.peak_db = out.grid.peak_db;
        s.peak_angle = out.grid.peak_angle;
        s.rank_azimuth = p_h.rank();
        s.rank_elevation = p_v.rank();
        s.nsp_enabled = opt.nsp;
        for (const auto &sector : sc.null_sectors)
            s.sectors.emplace_back(sector, sector_metrics(out.grid, sector));
        if (sc.search)
            s.search = evaluate_search(sc);
        s.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    }

    // Fixed 9-significant-digit formatting used by every artifact
    inline std::string format9(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return buf;
    }

    // Rounds to the value that format9 prints, so JSON and CSV agree exactly
    inline double round9(double v) { return std::strtod(format9(v).c_str(), nullptr); }

    inline std::string beampattern_csv(const BeampatternGrid &g)
    {
        std::string out = "az_deg,el_deg,gain_db\n";
        out.reserve(out.size() + g.az_samples.size() * g.el_samples.size() * 28);
        for (std::size_t i = 0; i < g.az_samples.size(); ++i)
            for (std::size_t e = 0; e < g.el_samples.size(); ++e)
            {
                out += format9(g.az_samples[i]);
                out += ',';
                out += format9(g.el_samples[e]);
                out += ',';
                out += format9(g.gain_db(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(i)));
                out += '\n';
            }
        return out;
    }

    inline std::string search_csv(const SearchSummary &s)
    {
        std::string out = "distance_m,percent_searchable\n";
        for (const auto &p : s.sweep)
            out += format9(p.distance_m) + ',' + format9(p.percent_searchable) + '\n';
        return out;
    }

    inline nlohmann::ordered_json summary_json(const RunSummary &s, const BeampatternGrid &g)
    {
        using nlohmann::ordered_json;
        ordered_json j;
        j["nsp_enabled"] = s.nsp_enabled;
        j["peak_db"] = round9(s.peak_db);
        j["peak_angle"] = {{"az_deg", round9(s.peak_angle.azimuth)}, {"el_deg", round9(s.peak_angle.elevation)}};
        j["projector_rank"] = {{"azimuth", s.rank_azimuth}, {"elevation", s.rank_elevation}};
        j["grid"] = {{"n_az", g.az_samples.size()}, {"n_el", g.el_samples.size()}, {"offset_db", round9(g.offset_db)},
                     {"floor_db", round9(g.floor_db)}};
        ordered_json sectors = ordered_json::array();
        for (const auto &[sector, m] : s.sectors)
            sectors.push_back({{"az_min", round9(sector.az_min)},
                               {"az_max", round9(sector.az_max)},
                               {"el_min", round9(sector.el_min)},
                               {"el_max", round9(sector.el_max)},
                               {"points", m.points},
                               {"max_db", round9(m.max_db)},
                               {"mean_db", round9(m.mean_db)},
                               {"peak_to_sector_db", round9(m.peak_to_sector_db)}});
        j["sectors"] = std::move(sectors);
        if (s.search)
        {
            const auto &r = s.search->sector_report;
            ordered_json sj = {{"omega_sr", round9(r.omega_sr)},
                               {"omega_nsp_sr", round9(r.omega_nsp_sr)},
                               {"null_deg2", round9(r.null_deg2)},
                               {"percent_searchable", round9(r.percent_searchable)}};
            if (s.search->region_width_m)
                sj["region_width_m"] = round9(*s.search->region_width_m);
            ordered_json sweep = ordered_json::array();
            for (const auto &p : s.search->sweep)
                sweep.push_back({{"distance_m", round9(p.distance_m)}, {"percent_searchable", round9(p.percent_searchable)}});
            sj["sweep"] = std::move(sweep);
            j["search"] = std::move(sj);
        }
        return j;
    }

    // Writes via a temporary file in the same directory and renames it into place
    inline void write_atomic(const std::filesystem::path &path, const std::string &content)
    {
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw io_error("cannot open '" + tmp.string() + "' for writing");
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            out.flush();
            if (!out)
            {
                std::error_code ec;
                std::filesystem::remove(tmp, ec);
                throw io_error("failed writing '" + tmp.string() + "'");
            }
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec)
        {
            std::filesystem::remove(tmp, ec);
            throw io_error("cannot move '" + tmp.string() + "' to '" + path.string() + "'");
        }
    }

    struct ArtifactPaths
    {
        std::filesystem::path beampattern_csv;
        std::filesystem::path summary_json;
        std::optional<std::filesystem::path> search_csv;
    };

    inline ArtifactPaths write_artifacts(const RunResult &result, const std::filesystem::path &out_dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec || !std::filesystem::is_directory(out_dir))
            throw io_error("cannot create output directory '" + out_dir.string() + "'");

        ArtifactPaths paths{out_dir / "beampattern.csv", out_dir / "summary.json", std::nullopt};
        write_atomic(paths.beampattern_csv, beampattern_csv(result.grid));
        if (result.summary.search)
        {
            paths.search_csv = out_dir / "search_volume.csv";
            write_atomic(*paths.search_csv, search_csv(*result.summary.search));
        }
        write_atomic(paths.summary_json, summary_json(result.summary, result.grid).dump(2) + "\n");
        return paths;
    }
}

#endif
