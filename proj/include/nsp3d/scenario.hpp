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

#ifndef NSP3D_SCENARIO_HPP
#define NSP3D_SCENARIO_HPP

// Scenario files: sections of `key = value` pairs, values being numbers or comma-separated
// number lists. '#' starts a comment. Example:
//
//   radar  { m_h = 40  m_v = 25  spacing = 0.5 }
//   target { az_deg = 0  el_deg = 50 }
//   null_sector {
//       az_min = -45  az_max = -40
//       el_min = 5    el_max = 15
//   }
//
// Sections: radar, target (required, once); grid, nsp, search (optional, once);
// null_sector, bs (repeatable). Angles are in degrees, lengths in meters.

#include "beamform.hpp"
#include "channel.hpp"
#include "search_volume.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace nsp3d
{
    struct GridSpec
    {
        double az_min = -90.0, az_max = 90.0, az_step = 1.0;
        double el_min = -90.0, el_max = 90.0, el_step = 1.0;

        bool operator==(const GridSpec &) const = default;
    };

    struct SearchSpec
    {
        SearchExtent extent;
        BsRegion region;
        std::vector<double> distances;
        std::optional<double> calibrate_distance_m; // solve region width so that the anchor holds
        std::optional<double> calibrate_percent;
        std::vector<double> null_deg2; // explicit nulled areas, one per distance (overrides the region model)

        bool operator==(const SearchSpec &) const = default;
    };

    struct Scenario
    {
        UraGeometry radar{1, 1};
        std::vector<BsDescriptor> bs_list;
        std::vector<NullSector> null_sectors;
        AngleDeg target;
        GridSpec grid;
        double nsp_tolerance = default_nsp_tolerance;
        std::optional<double> peak_normalization_db;
        std::optional<SearchSpec> search;

        bool operator==(const Scenario &) const = default;
    };

    namespace detail
    {
        struct Token
        {
            enum Kind
            {
                word,
                number,
                open,
                close,
                equals,
                comma,
                end
            } kind;
            std::string text;
            std::size_t line;
        };

        inline std::vector<Token> tokenize(std::string_view src)
        {
            std::vector<Token> out;
            std::size_t line = 1, i = 0;
            while (i < src.size())
            {
                const char c = src[i];
                if (c == '\n')
                {
                    ++line;
                    ++i;
                }
                else if (std::isspace(static_cast<unsigned char>(c)))
                    ++i;
                else if (c == '#')
                {
                    while (i < src.size() && src[i] != '\n')
                        ++i;
                }
                else if (c == '{')
                    out.push_back({Token::open, "{", line}), ++i;
                else if (c == '}')
                    out.push_back({Token::close, "}", line}), ++i;
                else if (c == '=')
                    out.push_back({Token::equals, "=", line}), ++i;
                else if (c == ',')
                    out.push_back({Token::comma, ",", line}), ++i;
                else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
                {
                    const std::size_t b = i;
                    while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                        ++i;
                    out.push_back({Token::word, std::string(src.substr(b, i - b)), line});
                }
                else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.')
                {
                    const std::size_t b = i;
                    while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '.' ||
                                              src[i] == '-' || src[i] == '+'))
                        ++i;
                    out.push_back({Token::number, std::string(src.substr(b, i - b)), line});
                }
                else
                    throw parse_error(std::string(1, c), line, "unexpected character");
            }
            out.push_back({Token::end, "", line});
            return out;
        }

        inline double to_double(const Token &t, const std::string &key)
        {
            double v = 0.0;
            std::string_view s = t.text;
            if (!s.empty() && s.front() == '+')
                s.remove_prefix(1);
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
                throw parse_error(key, t.line, "invalid number '" + t.text + "'");
            return v;
        }

        struct Entry
        {
            std::vector<double> values;
            std::size_t line;
        };

        struct Section
        {
            std::string name;
            std::size_t line;
            std::map<std::string, Entry> entries;
        };

        inline std::vector<Section> parse_sections(std::string_view src)
        {
            const auto tokens = tokenize(src);
            std::vector<Section> sections;
            std::size_t i = 0;
            auto expect = [&](Token::Kind k, const std::string &key, const char *what) -> const Token &
            {
                if (tokens[i].kind != k)
                    throw parse_error(key, tokens[i].line, std::string("expected ") + what + ", found '" + tokens[i].text + "'");
                return tokens[i++];
            };

            while (tokens[i].kind != Token::end)
            {
                const Token &name = expect(Token::word, tokens[i].text, "section name");
                expect(Token::open, name.text, "'{'");
                Section sec{name.text, name.line, {}};
                while (tokens[i].kind != Token::close)
                {
                    if (tokens[i].kind == Token::end)
                        throw parse_error(name.text, name.line, "section is not closed");
                    const Token &key = expect(Token::word, tokens[i].text, "key");
                    expect(Token::equals, key.text, "'='");
                    Entry e{{}, key.line};
                    e.values.push_back(to_double(expect(Token::number, key.text, "number"), key.text));
                    while (tokens[i].kind == Token::comma)
                    {
                        ++i;
                        e.values.push_back(to_double(expect(Token::number, key.text, "number"), key.text));
                    }
                    if (!sec.entries.emplace(key.text, std::move(e)).second)
                        throw parse_error(key.text, key.line, "duplicate key in section '" + name.text + "'");
                }
                ++i;
                sections.push_back(std::move(sec));
            }
            return sections;
        }

        // Typed access to one section's entries; flags unknown keys
        class SectionReader
        {
        public:
            SectionReader(const Section &s, std::set<std::string> allowed) : s_(s)
            {
                for (const auto &[key, entry] : s.entries)
                    if (!allowed.contains(key))
                        throw parse_error(key, entry.line, "unknown key in section '" + s.name + "'");
            }

            bool has(const std::string &key) const { return s_.entries.contains(key); }

            void require(const std::string &key) const
            {
                if (!has(key))
                    throw parse_error(key, s_.line, "missing required key in section '" + s_.name + "'");
            }

            std::size_t line_of(const std::string &key) const
            {
                const auto it = s_.entries.find(key);
                return it == s_.entries.end() ? s_.line : it->second.line;
            }

            double scalar(const std::string &key) const
            {
                const auto it = s_.entries.find(key);
                if (it == s_.entries.end())
                    throw parse_error(key, s_.line, "missing required key in section '" + s_.name + "'");
                if (it->second.values.size() != 1)
                    throw parse_error(key, it->second.line, "expected a single value");
                return it->second.values.front();
            }

            double scalar(const std::string &key, double fallback) const { return has(key) ? scalar(key) : fallback; }

            std::optional<double> optional_scalar(const std::string &key) const
            {
                return has(key) ? std::optional<double>(scalar(key)) : std::nullopt;
            }

            std::size_t count(const std::string &key, std::size_t fallback) const
            {
                if (!has(key))
                    return fallback;
                const double v = scalar(key);
                if (!(v >= 1.0) || v != std::floor(v) || v > 1e6)
                    throw parse_error(key, line_of(key), "expected a positive integer");
                return static_cast<std::size_t>(v);
            }

            std::vector<double> list(const std::string &key) const
            {
                const auto it = s_.entries.find(key);
                return it == s_.entries.end() ? std::vector<double>{} : it->second.values;
            }

            const std::string &name() const { return s_.name; }
            std::size_t line() const { return s_.line; }

        private:
            const Section &s_;
        };

        // Runs a validator and rethrows library domain errors as parse errors at `line`
        template <typename F>
        void validated(const std::string &key, std::size_t line, F &&f)
        {
            try
            {
                f();
            }
            catch (const parse_error &)
            {
                throw;
            }
            catch (const error &e)
            {
                throw parse_error(key, line, e.what());
            }
        }

        inline std::string format_exact(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }
    }

    // Parses and validates scenario text; defaults are filled in for omitted keys
    inline Scenario parse_scenario_text(std::string_view text)
    {
        using detail::SectionReader;
        const auto sections = detail::parse_sections(text);

        Scenario sc;
        std::set<std::string> seen;
        bool have_radar = false, have_target = false;
        for (const auto &sec : sections)
        {
            const bool single = sec.name != "null_sector" && sec.name != "bs";
            if (single && !seen.insert(sec.name).second)
                throw parse_error(sec.name, sec.line, "section may appear only once");

            if (sec.name == "radar")
            {
                SectionReader r(sec, {"m_h", "m_v", "spacing"});
                r.require("m_h");
                r.require("m_v");
                const std::size_t mh = r.count("m_h", 1), mv = r.count("m_v", 1);
                const double spacing = r.scalar("spacing", 0.5);
                detail::validated("spacing", r.line_of("spacing"), [&]
                                  { sc.radar = UraGeometry(mh, mv, spacing); });
                have_radar = true;
            }
            else if (sec.name == "target")
            {
                SectionReader r(sec, {"az_deg", "el_deg"});
                sc.target = {r.scalar("az_deg"), r.scalar("el_deg")};
                detail::validated("az_deg", r.line(), [&]
                                  { checked_angle(sc.target); });
                have_target = true;
            }
            else if (sec.name == "null_sector")
            {
                SectionReader r(sec, {"az_min", "az_max", "el_min", "el_max", "step"});
                NullSector s{r.scalar("az_min"), r.scalar("az_max"), r.scalar("el_min"), r.scalar("el_max"), r.scalar("step", 1.0)};
                detail::validated("null_sector", r.line(), [&]
                                  { s.validate(); });
                sc.null_sectors.push_back(s);
            }
            else if (sec.name == "bs")
            {
                SectionReader r(sec, {"az_deg", "el_deg", "n", "gain_re", "gain_im", "bs_side_deg", "spacing"});
                BsDescriptor b;
                b.angle = {r.scalar("az_deg"), r.scalar("el_deg")};
                const std::size_t n = r.count("n", 1);
                b.array = UlaGeometry(n);
                b.path_gain = {r.scalar("gain_re", 1.0), r.scalar("gain_im", 0.0)};
                b.bs_side_angle = r.scalar("bs_side_deg", 90.0);
                b.bs_spacing = r.scalar("spacing", 0.5);
                detail::validated("bs", r.line(), [&]
                                  { b.validate(); });
                sc.bs_list.push_back(b);
            }
            else if (sec.name == "grid")
            {
                SectionReader r(sec, {"az_min", "az_max", "az_step", "el_min", "el_max", "el_step"});
                GridSpec g;
                g.az_min = r.scalar("az_min", g.az_min);
                g.az_max = r.scalar("az_max", g.az_max);
                g.az_step = r.scalar("az_step", g.az_step);
                g.el_min = r.scalar("el_min", g.el_min);
                g.el_max = r.scalar("el_max", g.el_max);
                g.el_step = r.scalar("el_step", g.el_step);
                if (!(g.az_step > 0.0))
                    throw parse_error("az_step", r.line_of("az_step"), "step must be positive");
                if (!(g.el_step > 0.0))
                    throw parse_error("el_step", r.line_of("el_step"), "step must be positive");
                if (g.az_min > g.az_max)
                    throw parse_error("az_min", r.line_of("az_min"), "az_min > az_max");
                if (g.el_min > g.el_max)
                    throw parse_error("el_min", r.line_of("el_min"), "el_min > el_max");
                detail::validated("grid", r.line(), [&]
                                  { checked_angle({g.az_min, g.el_min}), checked_angle({g.az_max, g.el_max}); });
                sc.grid = g;
            }
            else if (sec.name == "nsp")
            {
                SectionReader r(sec, {"tolerance", "peak_normalization_db"});
                sc.nsp_tolerance = r.scalar("tolerance", default_nsp_tolerance);
                if (!(sc.nsp_tolerance >= 0.0 && sc.nsp_tolerance < 1.0))
                    throw parse_error("tolerance", r.line_of("tolerance"), "tolerance must be in [0, 1)");
                sc.peak_normalization_db = r.optional_scalar("peak_normalization_db");
            }
            else if (sec.name == "search")
            {
                SectionReader r(sec, {"az_extent", "el_extent", "region_width_m", "region_hmin_m", "region_hmax_m",
                                      "distances", "calibrate_distance_m", "calibrate_percent", "null_deg2"});
                SearchSpec s;
                s.extent = {r.scalar("az_extent", s.extent.az_extent), r.scalar("el_extent", s.extent.el_extent)};
                detail::validated("az_extent", r.line(), [&]
                                  { s.extent.validate(); });
                s.region = {r.scalar("region_width_m", 0.0), r.scalar("region_hmin_m", 0.0), r.scalar("region_hmax_m", 0.0)};
                if (!(s.region.width_m >= 0.0))
                    throw parse_error("region_width_m", r.line_of("region_width_m"), "width must be non-negative");
                if (!(s.region.height_max_m >= s.region.height_min_m))
                    throw parse_error("region_hmax_m", r.line_of("region_hmax_m"), "region_hmax_m < region_hmin_m");
                s.distances = r.list("distances");
                for (double d : s.distances)
                    if (!(d > 0.0))
                        throw parse_error("distances", r.line_of("distances"), "distances must be positive");
                s.calibrate_distance_m = r.optional_scalar("calibrate_distance_m");
                s.calibrate_percent = r.optional_scalar("calibrate_percent");
                if (s.calibrate_distance_m.has_value() != s.calibrate_percent.has_value())
                    throw parse_error("calibrate_percent", r.line(), "calibrate_distance_m and calibrate_percent go together");
                if (s.calibrate_distance_m && !(*s.calibrate_distance_m > 0.0))
                    throw parse_error("calibrate_distance_m", r.line_of("calibrate_distance_m"), "must be positive");
                if (s.calibrate_percent && !(*s.calibrate_percent >= 0.0 && *s.calibrate_percent <= 100.0))
                    throw parse_error("calibrate_percent", r.line_of("calibrate_percent"), "must be in [0, 100]");
                s.null_deg2 = r.list("null_deg2");
                if (!s.null_deg2.empty() && s.null_deg2.size() != s.distances.size())
                    throw parse_error("null_deg2", r.line_of("null_deg2"), "needs one value per distance");
                for (double a : s.null_deg2)
                    if (!(a >= 0.0 && a <= s.extent.area_deg2()))
                        throw parse_error("null_deg2", r.line_of("null_deg2"), "nulled area outside [0, az_extent * el_extent]");
                sc.search = std::move(s);
            }
            else
                throw parse_error(sec.name, sec.line, "unknown section");
        }
        if (!have_radar)
            throw parse_error("radar", 0, "missing required section");
        if (!have_target)
            throw parse_error("target", 0, "missing required section");
        return sc;
    }

    inline Scenario parse_scenario(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw io_error("cannot open scenario file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        if (in.bad())
            throw io_error("cannot read scenario file '" + path + "'");
        return parse_scenario_text(ss.str());
    }

    // Canonical text form; parse_scenario_text(emit_scenario(s)) == s
    inline std::string emit_scenario(const Scenario &sc)
    {
        using detail::format_exact;
        std::ostringstream o;
        auto kv = [&](const char *key, double v)
        { o << "    " << key << " = " << format_exact(v) << '\n'; };
        auto kl = [&](const char *key, const std::vector<double> &vs)
        {
            o << "    " << key << " = ";
            for (std::size_t i = 0; i < vs.size(); ++i)
                o << (i ? ", " : "") << format_exact(vs[i]);
            o << '\n';
        };

        o << "radar {\n";
        kv("m_h", static_cast<double>(sc.radar.m_h()));
        kv("m_v", static_cast<double>(sc.radar.m_v()));
        kv("spacing", sc.radar.spacing());
        o << "}\ntarget {\n";
        kv("az_deg", sc.target.azimuth);
        kv("el_deg", sc.target.elevation);
        o << "}\n";
        for (const auto &s : sc.null_sectors)
        {
            o << "null_sector {\n";
            kv("az_min", s.az_min);
            kv("az_max", s.az_max);
            kv("el_min", s.el_min);
            kv("el_max", s.el_max);
            kv("step", s.step);
            o << "}\n";
        }
        for (const auto &b : sc.bs_list)
        {
            o << "bs {\n";
            kv("az_deg", b.angle.azimuth);
            kv("el_deg", b.angle.elevation);
            kv("n", static_cast<double>(b.array.n()));
            kv("gain_re", b.path_gain.real());
            kv("gain_im", b.path_gain.imag());
            kv("bs_side_deg", b.bs_side_angle);
            kv("spacing", b.bs_spacing);
            o << "}\n";
        }
        o << "grid {\n";
        kv("az_min", sc.grid.az_min);
        kv("az_max", sc.grid.az_max);
        kv("az_step", sc.grid.az_step);
        kv("el_min", sc.grid.el_min);
        kv("el_max", sc.grid.el_max);
        kv("el_step", sc.grid.el_step);
        o << "}\nnsp {\n";
        kv("tolerance", sc.nsp_tolerance);
        if (sc.peak_normalization_db)
            kv("peak_normalization_db", *sc.peak_normalization_db);
        o << "}\n";
        if (sc.search)
        {
            const auto &s = *sc.search;
            o << "search {\n";
            kv("az_extent", s.extent.az_extent);
            kv("el_extent", s.extent.el_extent);
            kv("region_width_m", s.region.width_m);
            kv("region_hmin_m", s.region.height_min_m);
            kv("region_hmax_m", s.region.height_max_m);
            if (!s.distances.empty())
                kl("distances", s.distances);
            if (s.calibrate_distance_m)
            {
                kv("calibrate_distance_m", *s.calibrate_distance_m);
                kv("calibrate_percent", *s.calibrate_percent);
            }
            if (!s.null_deg2.empty())
                kl("null_deg2", s.null_deg2);
            o << "}\n";
        }
        return o.str();
    }
}

#endif
