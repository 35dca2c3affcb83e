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

#include <nsp3d/scenario.hpp>

#include <random>

using namespace nsp3d;

namespace
{
    // Expects a parse_error naming `key` on `line`
    void check_parse_error(const std::string &text, const std::string &key, std::size_t line)
    {
        try
        {
            parse_scenario_text(text);
            FAIL("no parse_error for key " << key);
        }
        catch (const parse_error &e)
        {
            CHECK(e.key() == key);
            CHECK(e.line() == line);
        }
    }
}

TEST_CASE("parse_scenario - minimal file gets defaults")
{
    const Scenario sc = parse_scenario_text("radar { m_h = 2 m_v = 2 }\ntarget { az_deg = 0 el_deg = 50 }\n");
    CHECK(sc.radar == UraGeometry(2, 2, 0.5));
    CHECK(sc.target == AngleDeg{0.0, 50.0});
    CHECK(sc.grid == GridSpec{});
    CHECK(sc.nsp_tolerance == 1e-10);
    CHECK_FALSE(sc.peak_normalization_db.has_value());
    CHECK(sc.null_sectors.empty());
    CHECK(sc.bs_list.empty());
    CHECK_FALSE(sc.search.has_value());
}

TEST_CASE("parse_scenario - coexistence scenario with 40x25 URA")
{
    const char *text = R"(
# 40 x 25 URA, target at (0, 50), BSs in -45..-40 az x 5..15 el
radar {
    m_h = 40
    m_v = 25
    spacing = 0.5
}
target { az_deg = 0  el_deg = 50 }
null_sector {
    az_min = -45   az_max = -40
    el_min = 5     el_max = 15
}
bs { az_deg = -42 el_deg = 10 n = 10 gain_re = 0.5 gain_im = -0.25 }
nsp { peak_normalization_db = 60 }
search {
    az_extent = 180  el_extent = 110
    region_hmax_m = 40
    distances = 500, 2000, 8000
    calibrate_distance_m = 500  calibrate_percent = 95.9
}
)";
    const Scenario sc = parse_scenario_text(text);
    CHECK(sc.radar.m_h() == 40);
    CHECK(sc.radar.m_v() == 25);
    CHECK(sc.target == AngleDeg{0.0, 50.0});
    REQUIRE(sc.null_sectors.size() == 1);
    CHECK(sc.null_sectors[0] == NullSector{-45.0, -40.0, 5.0, 15.0, 1.0});
    REQUIRE(sc.bs_list.size() == 1);
    CHECK(sc.bs_list[0].array.n() == 10);
    CHECK(sc.bs_list[0].path_gain == cplx(0.5, -0.25));
    CHECK(sc.bs_list[0].bs_side_angle == 90.0);
    CHECK(sc.peak_normalization_db == 60.0);
    REQUIRE(sc.search.has_value());
    CHECK(sc.search->distances == std::vector<double>{500.0, 2000.0, 8000.0});
    CHECK(sc.search->calibrate_percent == 95.9);
    CHECK(sc.search->region.height_max_m == 40.0);
}

TEST_CASE("parse_scenario - errors name the key and the line")
{
    const std::string head = "radar { m_h = 2 m_v = 2 }\ntarget { az_deg = 0 el_deg = 50 }\n";
    check_parse_error(head + "grid {\n az_step = -1\n}\n", "az_step", 4);
    check_parse_error(head + "grid { el_step = 0 }\n", "el_step", 3);
    check_parse_error(head + "radar { m_h = 3 m_v = 3 }\n", "radar", 3);
    check_parse_error("radar { m_h = 2 m_v = 2 colour = 3 }\ntarget { az_deg = 0 el_deg = 0 }", "colour", 1);
    check_parse_error("radar { m_h = 2 }\ntarget { az_deg = 0 el_deg = 0 }", "m_v", 1);
    check_parse_error("radar { m_h = 2.5 m_v = 2 }\ntarget { az_deg = 0 el_deg = 0 }", "m_h", 1);
    check_parse_error("radar { m_h = 2 m_v = 2 }\n\ntarget { az_deg = 0 el_deg = abc }", "el_deg", 3);
    check_parse_error("radar { m_h = 2 m_v = 2 }\ntarget { az_deg = 0 el_deg = 1x }", "el_deg", 2);
    check_parse_error("radar { m_h = 2 m_v = 2 }\ntarget { az_deg = 0 az_deg = 1 el_deg = 0 }", "az_deg", 2);
    check_parse_error("radar { m_h = 2 m_v = 2 }\nantenna { x = 1 }\n", "antenna", 2);
    check_parse_error(head + "null_sector { az_min = 5 az_max = 1 el_min = 0 el_max = 1 }", "null_sector", 3);
    check_parse_error(head + "search { distances = 100, -5 }", "distances", 3);
    check_parse_error(head + "search { distances = 100, 200 null_deg2 = 5 }", "null_deg2", 3);
    check_parse_error(head + "bs { az_deg = 0 el_deg = 0 gain_re = 0 }", "bs", 3);
    check_parse_error("radar { m_h = 2 m_v = 2 }\n", "target", 0);
    check_parse_error("radar { m_h = 2 m_v = 2 \n", "radar", 1);
    check_parse_error(head + "nsp { tolerance = 2 }", "tolerance", 3);
}

TEST_CASE("parse_scenario - missing file is an I/O error")
{
    CHECK_THROWS_AS(parse_scenario("/nonexistent/definitely/missing.scn"), io_error);
}

TEST_CASE("emit_scenario - property: parse(emit(s)) == s")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> az(-180.0, 180.0), el(-90.0, 90.0), u(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> n(1, 50);
    for (int trial = 0; trial < 40; ++trial)
    {
        Scenario sc;
        sc.radar = UraGeometry(n(rng), n(rng), 0.1 + u(rng));
        sc.target = {az(rng), el(rng)};
        for (int i = 0; i < trial % 3; ++i)
        {
            const double a = az(rng), e = el(rng);
            sc.null_sectors.push_back({std::min(a, 0.0), std::max(a, 0.0), std::min(e, 0.0), std::max(e, 0.0), 0.1 + u(rng)});
        }
        for (int i = 0; i < trial % 2; ++i)
        {
            BsDescriptor b;
            b.angle = {az(rng), el(rng)};
            b.array = UlaGeometry(n(rng));
            b.path_gain = {0.1 + u(rng), -u(rng)};
            b.bs_side_angle = az(rng);
            b.bs_spacing = 0.1 + u(rng);
            sc.bs_list.push_back(b);
        }
        sc.grid = {-90.0 * u(rng), 90.0 * u(rng), 0.1 + u(rng), -90.0 * u(rng), 90.0 * u(rng), 0.1 + u(rng)};
        sc.nsp_tolerance = 1e-12 + 1e-9 * u(rng);
        if (trial % 2)
            sc.peak_normalization_db = 100.0 * u(rng);
        if (trial % 3 == 1)
        {
            SearchSpec s;
            s.extent = {1.0 + 359.0 * u(rng), 1.0 + 179.0 * u(rng)};
            s.region = {1000.0 * u(rng), 10.0 * u(rng), 10.0 + 50.0 * u(rng)};
            s.distances = {100.0 + u(rng), 1000.0 * (1.0 + u(rng))};
            if (trial % 2)
            {
                s.calibrate_distance_m = 500.0;
                s.calibrate_percent = 90.0 + 10.0 * u(rng);
            }
            else
                s.null_deg2 = {s.extent.area_deg2() * u(rng), s.extent.area_deg2() * u(rng)};
            sc.search = s;
        }
        const std::string text = emit_scenario(sc);
        CHECK(parse_scenario_text(text) == sc);
        CHECK(emit_scenario(parse_scenario_text(text)) == text);
    }
}
