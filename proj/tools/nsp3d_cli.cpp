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

// Runs a scenario file through the channel / null-space projection / beampattern pipeline.
// Exit codes: 0 success, 2 invalid scenario, 3 numerical failure, 4 I/O failure.

#include <nsp3d/nsp3d.hpp>

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace
{
    constexpr int exit_parse = 2;
    constexpr int exit_numerical = 3;
    constexpr int exit_io = 4;

    void print_summary(const nsp3d::RunSummary &s, const nsp3d::ArtifactPaths &paths)
    {
        std::printf("nsp                : %s\n", s.nsp_enabled ? "on" : "off");
        std::printf("projector ranks    : azimuth %zu, elevation %zu\n", s.rank_azimuth, s.rank_elevation);
        std::printf("peak               : %.3f dB at az %.3f deg, el %.3f deg\n", s.peak_db, s.peak_angle.azimuth,
                    s.peak_angle.elevation);
        for (std::size_t i = 0; i < s.sectors.size(); ++i)
        {
            const auto &[sec, m] = s.sectors[i];
            std::printf("sector %zu           : az [%g, %g] el [%g, %g]  max %.3f dB  mean %.3f dB  peak-to-sector %.3f dB\n",
                        i, sec.az_min, sec.az_max, sec.el_min, sec.el_max, m.max_db, m.mean_db, m.peak_to_sector_db);
        }
        if (s.search)
        {
            std::printf("search volume      : %.4f sr total, %.4f sr with nulls (%.3f %%)\n", s.search->sector_report.omega_sr,
                        s.search->sector_report.omega_nsp_sr, s.search->sector_report.percent_searchable);
            for (const auto &p : s.search->sweep)
                std::printf("  %10.1f m      : %.3f %%\n", p.distance_m, p.percent_searchable);
        }
        std::printf("wall clock         : %.3f s\n", s.wall_clock_s);
        std::printf("wrote              : %s, %s", paths.beampattern_csv.string().c_str(), paths.summary_json.string().c_str());
        if (paths.search_csv)
            std::printf(", %s", paths.search_csv->string().c_str());
        std::printf("\n");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"3D radar/cellular channel model with null-space projection"};

    std::string scenario_path;
    std::string out_dir = "./out";
    bool no_nsp = false;
    bool quiet = false;
    std::optional<double> tol;
    unsigned threads = 0;

    app.add_option("--scenario", scenario_path, "Scenario file")->required();
    app.add_option("--out-dir", out_dir, "Directory for beampattern.csv, summary.json and search_volume.csv")
        ->capture_default_str();
    app.add_flag("--no-nsp", no_nsp, "Bypass the null-space projection (identity projectors)");
    app.add_option("--tol", tol, "Relative singular-value threshold, overrides the scenario")->check(CLI::NonNegativeNumber);
    app.add_option("--threads", threads, "Beampattern worker threads (0 = all cores)");
    app.add_flag("--quiet", quiet, "Suppress the console summary");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_parse;
    }

    try
    {
        const nsp3d::Scenario scenario = nsp3d::parse_scenario(scenario_path);
        if (!quiet && scenario.null_sectors.empty() && scenario.bs_list.empty() && !no_nsp)
            std::cerr << "warning: scenario has no null sectors or base stations, projection is the identity\n";

        nsp3d::RunOptions opt;
        opt.nsp = !no_nsp;
        opt.tol_override = tol;
        opt.threads = threads;
        const nsp3d::RunResult result = nsp3d::run_pipeline(scenario, opt);
        const nsp3d::ArtifactPaths paths = nsp3d::write_artifacts(result, out_dir);
        if (!quiet)
            print_summary(result.summary, paths);
        return 0;
    }
    catch (const nsp3d::parse_error &e)
    {
        std::cerr << "error: " << scenario_path << ": " << e.what() << '\n';
        return exit_parse;
    }
    catch (const nsp3d::io_error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const nsp3d::numerical_error &e)
    {
        std::cerr << "error: numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
    catch (const nsp3d::error &e)
    {
        std::cerr << "error: invalid scenario: " << e.what() << '\n';
        return exit_parse;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical;
    }
}
