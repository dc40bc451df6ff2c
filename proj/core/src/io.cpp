// SPDX-License-Identifier: Apache-2.0
//
// mmwchan - millimeter-wave multipath channel statistics toolkit
// Copyright (C) 2026 mmwchan contributors
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

#include "mmwchan/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mmwchan/errors.hpp"
#include "mmwchan/units.hpp"

namespace mmwchan {

namespace {

std::vector<std::string> split_lines(const std::string &text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            if (!cur.empty() && cur.back() == '\r')
                cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty())
        lines.push_back(cur);
    return lines;
}

std::vector<std::string> split_tokens(const std::string &line) {
    std::vector<std::string> tokens;
    std::istringstream is(line);
    std::string t;
    while (is >> t)
        tokens.push_back(t);
    return tokens;
}

std::string trim(const std::string &s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos)
        return "";
    return s.substr(a, b - a + 1);
}

// Parsed header/data view of one delimited text file.
struct ParsedFile {
    std::string name;
    std::string kind; // token after "mmwchan" on the first line
    std::map<std::string, std::string> header;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows; // (line, tokens)
};

ParsedFile parse_delimited(const std::string &text, const std::string &name,
                           const std::string &expected_kind) {
    ParsedFile out;
    out.name = name;
    const auto lines = split_lines(text);
    if (lines.empty())
        throw parse_error(name, 1, "empty file");

    {
        const auto first = split_tokens(lines[0]);
        if (first.size() < 4 || first[0] != "#" || first[1] != "mmwchan")
            throw parse_error(name, 1, "missing 'mmwchan <kind> v1' signature line");
        out.kind = first[2];
        if (out.kind != expected_kind)
            throw parse_error(name, 1,
                              "expected a '" + expected_kind + "' file, found '" + out.kind + "'");
        if (first[3] != "v1")
            throw parse_error(name, 1, "unsupported format version " + first[3]);
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string &line = lines[i];
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            const std::size_t eq = body.find('=');
            if (eq != std::string::npos) {
                const std::string key = trim(body.substr(0, eq));
                const std::string value = trim(body.substr(eq + 1));
                if (out.header.count(key))
                    throw parse_error(name, i + 1, "duplicate header key '" + key + "'");
                out.header[key] = value;
            }
            continue; // other comments (e.g. the columns note) are free-form
        }
        out.rows.emplace_back(i + 1, split_tokens(line));
    }
    return out;
}

const std::string &need_header(const ParsedFile &f, const std::string &key) {
    auto it = f.header.find(key);
    if (it == f.header.end())
        throw parse_error(f.name, 1, "missing mandatory header '" + key + "'");
    return it->second;
}

long long parse_int(const std::string &token, const std::string &file, std::size_t line) {
    long long v = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        throw parse_error(file, line, "malformed integer '" + token + "'");
    return v;
}

std::uint64_t parse_u64(const std::string &token, const std::string &file, std::size_t line) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        throw parse_error(file, line, "malformed unsigned integer '" + token + "'");
    return v;
}

// dB token that may be "-inf" (zero linear power).
double parse_db_to_linear(const std::string &token, const std::string &file, std::size_t line) {
    if (token == "-inf")
        return 0.0;
    return db_to_linear(parse_double(token, file, line));
}

std::string linear_to_db_token(double mw) {
    if (mw <= 0.0)
        return "-inf";
    return format_double(linear_to_db(mw));
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string &token, const std::string &file, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        throw parse_error(file, line, "malformed number '" + token + "'");
    return v;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_hash(const GeneratorConfig &config) {
    const auto &sc = config.scenario;
    std::ostringstream os;
    auto put = [&os](const char *key, const std::string &value) {
        os << key << '=' << value << '\n';
    };
    auto putd = [&](const char *key, double v) { put(key, format_double(v)); };
    putd("frequency_ghz", sc.frequency_ghz);
    put("los_condition", to_string(sc.los_condition));
    putd("num_clusters_mu", sc.num_clusters_mu);
    putd("num_clusters_sigma", sc.num_clusters_sigma);
    putd("num_subpaths_mu", sc.num_subpaths_mu);
    putd("num_subpaths_sigma", sc.num_subpaths_sigma);
    putd("cluster_decay_gamma_ns", sc.cluster_decay_gamma_ns);
    putd("subpath_decay_gamma_ns", sc.subpath_decay_gamma_ns);
    putd("per_cluster_shadowing_db", sc.per_cluster_shadowing_db);
    putd("per_subpath_shadowing_db", sc.per_subpath_shadowing_db);
    putd("num_aod_lobes_mu", sc.num_aod_lobes_mu);
    putd("num_aod_lobes_sigma", sc.num_aod_lobes_sigma);
    putd("num_aoa_lobes_mu", sc.num_aoa_lobes_mu);
    putd("num_aoa_lobes_sigma", sc.num_aoa_lobes_sigma);
    putd("rms_lobe_asd_mu_deg", sc.rms_lobe_asd_mu_deg);
    putd("rms_lobe_asd_sigma_deg", sc.rms_lobe_asd_sigma_deg);
    put("rms_lobe_esd_mu_deg",
        sc.rms_lobe_esd_mu_deg ? format_double(*sc.rms_lobe_esd_mu_deg) : "-");
    put("rms_lobe_esd_sigma_deg",
        sc.rms_lobe_esd_sigma_deg ? format_double(*sc.rms_lobe_esd_sigma_deg) : "-");
    putd("rms_lobe_asa_mu_deg", sc.rms_lobe_asa_mu_deg);
    putd("rms_lobe_asa_sigma_deg", sc.rms_lobe_asa_sigma_deg);
    putd("rms_lobe_esa_mu_deg", sc.rms_lobe_esa_mu_deg);
    putd("rms_lobe_esa_sigma_deg", sc.rms_lobe_esa_sigma_deg);
    putd("xpr_mu_db", sc.xpr_mu_db);
    putd("xpr_sigma_db", sc.xpr_sigma_db);
    putd("delay_scaling_r_ds_mu", sc.delay_scaling_r_ds_mu);
    putd("delay_scaling_r_ds_sigma", sc.delay_scaling_r_ds_sigma);
    putd("inter_cluster_void_ns", sc.inter_cluster_void_ns);
    put("count_model",
        config.count_model == CountModel::rounded_gaussian ? "rounded_gaussian" : "poisson");
    put("correct_count_bias", config.correct_count_bias ? "1" : "0");
    put("lobe_assignment",
        config.lobe_assignment == LobeAssignment::covering_random ? "covering_random"
                                                                  : "independent");
    putd("min_subpath_power_db", config.min_subpath_power_db);
    putd("inter_cluster_exponential_mean_ns", config.inter_cluster_exponential_mean_ns);
    putd("aod_elevation_center_deg", config.aod_elevation_center_deg);
    putd("aoa_elevation_center_deg", config.aoa_elevation_center_deg);

    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(os.str())));
    return std::string(buf);
}

// ---- PDP -------------------------------------------------------------------

PdpFile parse_pdp(const std::string &text, const std::string &name) {
    const ParsedFile f = parse_delimited(text, name, "pdp");
    PdpFile out;
    out.profile.bin_width_ns = parse_double(need_header(f, "bin_width_ns"), name, 1);
    out.profile.noise_floor_mw = parse_db_to_linear(need_header(f, "noise_floor_dbm"), name, 1);
    out.location_id = need_header(f, "location_id");
    if (auto it = f.header.find("frequency_ghz"); it != f.header.end())
        out.frequency_ghz = parse_double(it->second, name, 1);
    if (auto it = f.header.find("polarization"); it != f.header.end()) {
        out.polarization = it->second;
        if (out.polarization != "VV" && out.polarization != "VH")
            throw parse_error(name, 1, "polarization must be VV or VH");
    }
    const auto n_bins =
        static_cast<std::size_t>(parse_int(need_header(f, "n_bins"), name, 1));
    if (n_bins == 0)
        throw parse_error(name, 1, "n_bins must be positive");
    out.profile.powers_mw.assign(n_bins, 0.0);

    long long prev = -1;
    for (const auto &[line, tokens] : f.rows) {
        if (tokens.size() != 2)
            throw parse_error(name, line, "expected 'bin_index power_dbm'");
        const long long idx = parse_int(tokens[0], name, line);
        if (idx <= prev)
            throw parse_error(name, line, "bin indices must be strictly increasing");
        if (idx < 0 || static_cast<std::size_t>(idx) >= n_bins)
            throw parse_error(name, line, "bin index out of range");
        out.profile.powers_mw[static_cast<std::size_t>(idx)] =
            parse_db_to_linear(tokens[1], name, line);
        prev = idx;
    }
    out.profile.validate();
    return out;
}

std::string emit_pdp(const PdpFile &f) {
    f.profile.validate();
    std::ostringstream os;
    os << "# mmwchan pdp v1\n";
    os << "# bin_width_ns=" << format_double(f.profile.bin_width_ns) << '\n';
    os << "# noise_floor_dbm=" << linear_to_db_token(f.profile.noise_floor_mw) << '\n';
    os << "# location_id=" << f.location_id << '\n';
    os << "# frequency_ghz=" << format_double(f.frequency_ghz) << '\n';
    os << "# polarization=" << f.polarization << '\n';
    os << "# n_bins=" << f.profile.powers_mw.size() << '\n';
    os << "# columns: bin_index power_dbm\n";
    for (std::size_t i = 0; i < f.profile.powers_mw.size(); ++i)
        if (f.profile.powers_mw[i] > 0.0)
            os << i << ' ' << linear_to_db_token(f.profile.powers_mw[i]) << '\n';
    return os.str();
}

// ---- PAS -------------------------------------------------------------------

PasFile parse_pas(const std::string &text, const std::string &name) {
    const ParsedFile f = parse_delimited(text, name, "pas");
    PasFile out;
    out.location_id = need_header(f, "location_id");
    const std::string domain = need_header(f, "domain");
    if (domain == "AOA")
        out.domain = AngleDomain::aoa;
    else if (domain == "AOD")
        out.domain = AngleDomain::aod;
    else
        throw parse_error(name, 1, "domain must be AOA or AOD");

    const double az_step = parse_double(need_header(f, "azimuth_step_deg"), name, 1);
    if (!(az_step > 0.0) ||
        std::abs(std::round(360.0 / az_step) * az_step - 360.0) > 1e-9)
        throw parse_error(name, 1, "azimuth_step_deg must divide 360");

    std::string convention = "horizon";
    if (auto it = f.header.find("elevation_convention"); it != f.header.end())
        convention = it->second;
    if (convention != "horizon" && convention != "zenith")
        throw parse_error(name, 1, "elevation_convention must be horizon or zenith");
    const bool zenith = convention == "zenith";

    std::vector<double> levels;
    {
        std::string raw = need_header(f, "elevation_levels");
        std::replace(raw.begin(), raw.end(), ',', ' ');
        for (const auto &tok : split_tokens(raw)) {
            double e = parse_double(tok, name, 1);
            levels.push_back(zenith ? 90.0 - e : e);
        }
    }
    if (levels.empty())
        throw parse_error(name, 1, "elevation_levels is empty");
    std::vector<double> sorted_levels = levels;
    std::sort(sorted_levels.begin(), sorted_levels.end());

    const auto n_az = static_cast<std::size_t>(std::llround(360.0 / az_step));
    out.spectrum.azimuth_deg.resize(n_az);
    for (std::size_t a = 0; a < n_az; ++a)
        out.spectrum.azimuth_deg[a] = static_cast<double>(a) * az_step;
    out.spectrum.elevation_deg = sorted_levels;
    out.spectrum.power_mw.assign(n_az * sorted_levels.size(), 0.0);

    std::vector<char> seen(n_az * sorted_levels.size(), 0);
    for (const auto &[line, tokens] : f.rows) {
        if (tokens.size() != 3)
            throw parse_error(name, line, "expected 'azimuth_deg elevation_deg power_dbm'");
        const double az = parse_double(tokens[0], name, line);
        double el = parse_double(tokens[1], name, line);
        if (zenith)
            el = 90.0 - el;
        const double a_idx = az / az_step;
        if (az < 0.0 || az >= 360.0 || std::abs(a_idx - std::round(a_idx)) > 1e-9)
            throw parse_error(name, line, "azimuth off the declared grid");
        const auto a = static_cast<std::size_t>(std::llround(a_idx));
        const auto el_it =
            std::find_if(sorted_levels.begin(), sorted_levels.end(),
                         [el](double v) { return std::abs(v - el) < 1e-9; });
        if (el_it == sorted_levels.end())
            throw parse_error(name, line, "elevation off the declared grid");
        const auto e = static_cast<std::size_t>(el_it - sorted_levels.begin());
        if (seen[a * sorted_levels.size() + e])
            throw parse_error(name, line, "duplicate grid cell");
        seen[a * sorted_levels.size() + e] = 1;
        out.spectrum.at(a, e) = parse_db_to_linear(tokens[2], name, line);
    }
    for (char s : seen)
        if (!s)
            throw parse_error(name, f.rows.empty() ? 1 : f.rows.back().first,
                              "incomplete grid: missing cells");
    out.spectrum.validate();
    return out;
}

std::string emit_pas(const PasFile &f) {
    f.spectrum.validate();
    std::ostringstream os;
    os << "# mmwchan pas v1\n";
    os << "# azimuth_step_deg="
       << format_double(f.spectrum.azimuth_deg.size() > 1
                            ? f.spectrum.azimuth_deg[1] - f.spectrum.azimuth_deg[0]
                            : 360.0)
       << '\n';
    os << "# elevation_levels=";
    for (std::size_t e = 0; e < f.spectrum.elevation_deg.size(); ++e)
        os << (e ? "," : "") << format_double(f.spectrum.elevation_deg[e]);
    os << '\n';
    os << "# location_id=" << f.location_id << '\n';
    os << "# domain=" << (f.domain == AngleDomain::aoa ? "AOA" : "AOD") << '\n';
    os << "# elevation_convention=horizon\n";
    os << "# columns: azimuth_deg elevation_deg power_dbm\n";
    for (std::size_t a = 0; a < f.spectrum.n_azimuth(); ++a)
        for (std::size_t e = 0; e < f.spectrum.n_elevation(); ++e)
            os << format_double(f.spectrum.azimuth_deg[a]) << ' '
               << format_double(f.spectrum.elevation_deg[e]) << ' '
               << linear_to_db_token(f.spectrum.at(a, e)) << '\n';
    return os.str();
}

// ---- Scenarios ---------------------------------------------------------------

namespace {

struct ScenarioKeyTable {
    // Returns true when the key was consumed.
    static bool apply(ScenarioParameters &sc, const std::string &key, const std::string &value,
                      const std::string &file, std::size_t line) {
        auto num = [&]() { return parse_double(value, file, line); };
        auto opt = [&]() -> std::optional<double> {
            if (value == "-")
                return std::nullopt;
            return parse_double(value, file, line);
        };
        if (key == "frequency_ghz") sc.frequency_ghz = num();
        else if (key == "los_condition") sc.los_condition = los_condition_from_string(value);
        else if (key == "num_clusters_mu") sc.num_clusters_mu = num();
        else if (key == "num_clusters_sigma") sc.num_clusters_sigma = num();
        else if (key == "num_subpaths_mu") sc.num_subpaths_mu = num();
        else if (key == "num_subpaths_sigma") sc.num_subpaths_sigma = num();
        else if (key == "cluster_decay_gamma_ns") sc.cluster_decay_gamma_ns = num();
        else if (key == "subpath_decay_gamma_ns") sc.subpath_decay_gamma_ns = num();
        else if (key == "per_cluster_shadowing_db") sc.per_cluster_shadowing_db = num();
        else if (key == "per_subpath_shadowing_db") sc.per_subpath_shadowing_db = num();
        else if (key == "num_aod_lobes_mu") sc.num_aod_lobes_mu = num();
        else if (key == "num_aod_lobes_sigma") sc.num_aod_lobes_sigma = num();
        else if (key == "num_aoa_lobes_mu") sc.num_aoa_lobes_mu = num();
        else if (key == "num_aoa_lobes_sigma") sc.num_aoa_lobes_sigma = num();
        else if (key == "rms_lobe_asd_mu_deg") sc.rms_lobe_asd_mu_deg = num();
        else if (key == "rms_lobe_asd_sigma_deg") sc.rms_lobe_asd_sigma_deg = num();
        else if (key == "rms_lobe_esd_mu_deg") sc.rms_lobe_esd_mu_deg = opt();
        else if (key == "rms_lobe_esd_sigma_deg") sc.rms_lobe_esd_sigma_deg = opt();
        else if (key == "rms_lobe_asa_mu_deg") sc.rms_lobe_asa_mu_deg = num();
        else if (key == "rms_lobe_asa_sigma_deg") sc.rms_lobe_asa_sigma_deg = num();
        else if (key == "rms_lobe_esa_mu_deg") sc.rms_lobe_esa_mu_deg = num();
        else if (key == "rms_lobe_esa_sigma_deg") sc.rms_lobe_esa_sigma_deg = num();
        else if (key == "xpr_mu_db") sc.xpr_mu_db = num();
        else if (key == "xpr_sigma_db") sc.xpr_sigma_db = num();
        else if (key == "delay_scaling_r_ds_mu") sc.delay_scaling_r_ds_mu = num();
        else if (key == "delay_scaling_r_ds_sigma") sc.delay_scaling_r_ds_sigma = num();
        else if (key == "inter_cluster_void_ns") sc.inter_cluster_void_ns = num();
        else return false;
        return true;
    }
};

} // namespace

const ScenarioParameters *ScenarioFile::find(const std::string &name) const {
    for (const auto &[n, sc] : sections)
        if (n == name)
            return &sc;
    return nullptr;
}

std::vector<std::string> ScenarioFile::section_names() const {
    std::vector<std::string> out;
    out.reserve(sections.size());
    for (const auto &[n, sc] : sections)
        out.push_back(n);
    return out;
}

ScenarioFile parse_scenarios(const std::string &text, const std::string &name) {
    const auto lines = split_lines(text);
    if (lines.empty() || split_tokens(lines[0]) !=
                             std::vector<std::string>{"#", "mmwchan", "scenarios", "v1"})
        throw parse_error(name, 1, "missing 'mmwchan scenarios v1' signature line");

    ScenarioFile out;
    std::string section;
    ScenarioParameters current;
    bool open = false;
    auto close_section = [&](std::size_t line) {
        if (!open)
            return;
        try {
            current.validate();
        } catch (const invalid_input &e) {
            throw parse_error(name, line, "section [" + section + "]: " + e.what());
        }
        out.sections.emplace_back(section, current);
    };

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string line = trim(lines[i]);
        if (line.empty() || line[0] == '#')
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw parse_error(name, i + 1, "unterminated section header");
            close_section(i + 1);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw parse_error(name, i + 1, "empty section name");
            if (out.find(section))
                throw parse_error(name, i + 1, "duplicate section [" + section + "]");
            current = ScenarioParameters{};
            open = true;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error(name, i + 1, "expected 'key = value'");
        if (!open)
            throw parse_error(name, i + 1, "key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!ScenarioKeyTable::apply(current, key, value, name, i + 1))
            throw parse_error(name, i + 1, "unknown scenario key '" + key + "'");
    }
    close_section(lines.size());
    if (out.sections.empty())
        throw parse_error(name, 1, "no scenario sections found");
    return out;
}

std::string emit_scenarios(const ScenarioFile &f) {
    std::ostringstream os;
    os << "# mmwchan scenarios v1\n";
    for (const auto &[name, sc] : f.sections) {
        os << "\n[" << name << "]\n";
        auto put = [&os](const char *key, const std::string &value) {
            os << key << " = " << value << '\n';
        };
        auto putd = [&](const char *key, double v) { put(key, format_double(v)); };
        putd("frequency_ghz", sc.frequency_ghz);
        put("los_condition", to_string(sc.los_condition));
        putd("num_clusters_mu", sc.num_clusters_mu);
        putd("num_clusters_sigma", sc.num_clusters_sigma);
        putd("num_subpaths_mu", sc.num_subpaths_mu);
        putd("num_subpaths_sigma", sc.num_subpaths_sigma);
        putd("cluster_decay_gamma_ns", sc.cluster_decay_gamma_ns);
        putd("subpath_decay_gamma_ns", sc.subpath_decay_gamma_ns);
        putd("per_cluster_shadowing_db", sc.per_cluster_shadowing_db);
        putd("per_subpath_shadowing_db", sc.per_subpath_shadowing_db);
        putd("num_aod_lobes_mu", sc.num_aod_lobes_mu);
        putd("num_aod_lobes_sigma", sc.num_aod_lobes_sigma);
        putd("num_aoa_lobes_mu", sc.num_aoa_lobes_mu);
        putd("num_aoa_lobes_sigma", sc.num_aoa_lobes_sigma);
        putd("rms_lobe_asd_mu_deg", sc.rms_lobe_asd_mu_deg);
        putd("rms_lobe_asd_sigma_deg", sc.rms_lobe_asd_sigma_deg);
        put("rms_lobe_esd_mu_deg",
            sc.rms_lobe_esd_mu_deg ? format_double(*sc.rms_lobe_esd_mu_deg) : "-");
        put("rms_lobe_esd_sigma_deg",
            sc.rms_lobe_esd_sigma_deg ? format_double(*sc.rms_lobe_esd_sigma_deg) : "-");
        putd("rms_lobe_asa_mu_deg", sc.rms_lobe_asa_mu_deg);
        putd("rms_lobe_asa_sigma_deg", sc.rms_lobe_asa_sigma_deg);
        putd("rms_lobe_esa_mu_deg", sc.rms_lobe_esa_mu_deg);
        putd("rms_lobe_esa_sigma_deg", sc.rms_lobe_esa_sigma_deg);
        putd("xpr_mu_db", sc.xpr_mu_db);
        putd("xpr_sigma_db", sc.xpr_sigma_db);
        putd("delay_scaling_r_ds_mu", sc.delay_scaling_r_ds_mu);
        putd("delay_scaling_r_ds_sigma", sc.delay_scaling_r_ds_sigma);
        putd("inter_cluster_void_ns", sc.inter_cluster_void_ns);
    }
    return os.str();
}

// ---- Path lists ---------------------------------------------------------------

bool PathsFile::has_cluster_labels() const {
    for (int c : cluster_id)
        if (c < 0)
            return false;
    return !cluster_id.empty();
}

ChannelImpulseResponse PathsFile::to_cir() const {
    if (!has_cluster_labels())
        throw invalid_input("PathsFile: cluster labels are required to form an impulse response");
    ChannelImpulseResponse cir;
    cir.paths = paths;
    cir.cluster_id = cluster_id;
    cir.aoa_lobe_id = aoa_lobe_id;
    cir.aod_lobe_id = aod_lobe_id;
    cir.scenario_tag = scenario_tag;
    cir.validate();
    return cir;
}

PathsFile PathsFile::from_cir(const ChannelImpulseResponse &cir, std::uint64_t seed,
                              std::uint64_t realization, const std::string &hash) {
    PathsFile f;
    f.paths = cir.paths;
    f.cluster_id = cir.cluster_id;
    f.aoa_lobe_id = cir.aoa_lobe_id;
    f.aod_lobe_id = cir.aod_lobe_id;
    f.scenario_tag = cir.scenario_tag;
    f.seed = seed;
    f.realization = realization;
    f.config_hash = hash;
    f.power_unit = "dB_rel";
    return f;
}

PathsFile parse_paths(const std::string &text, const std::string &name) {
    const ParsedFile f = parse_delimited(text, name, "paths");
    PathsFile out;
    if (auto it = f.header.find("scenario"); it != f.header.end())
        out.scenario_tag = it->second;
    if (auto it = f.header.find("seed"); it != f.header.end())
        out.seed = parse_u64(it->second, name, 1);
    if (auto it = f.header.find("realization"); it != f.header.end())
        out.realization = parse_u64(it->second, name, 1);
    if (auto it = f.header.find("config_hash"); it != f.header.end())
        out.config_hash = it->second;
    if (auto it = f.header.find("power_unit"); it != f.header.end()) {
        out.power_unit = it->second;
        if (out.power_unit != "dBm" && out.power_unit != "dB_rel")
            throw parse_error(name, 1, "power_unit must be dBm or dB_rel");
    }

    auto label = [&](const std::string &tok, std::size_t line) -> int {
        if (tok == "-")
            return -1;
        return static_cast<int>(parse_int(tok, name, line));
    };
    for (const auto &[line, tokens] : f.rows) {
        if (tokens.size() != 10)
            throw parse_error(name, line,
                              "expected 10 columns: delay_ns power_db aod_az_deg aod_el_deg "
                              "aoa_az_deg aoa_el_deg xpr_db cluster_id aod_lobe_id aoa_lobe_id");
        MultipathComponent p;
        p.delay_ns = parse_double(tokens[0], name, line);
        p.power_mw = parse_db_to_linear(tokens[1], name, line);
        p.aod_azimuth_deg = parse_double(tokens[2], name, line);
        p.aod_elevation_deg = parse_double(tokens[3], name, line);
        p.aoa_azimuth_deg = parse_double(tokens[4], name, line);
        p.aoa_elevation_deg = parse_double(tokens[5], name, line);
        p.xpr_db = tokens[6] == "-" ? 0.0 : parse_double(tokens[6], name, line);
        try {
            p.validate();
        } catch (const invalid_input &e) {
            throw parse_error(name, line, e.what());
        }
        out.paths.push_back(p);
        out.cluster_id.push_back(label(tokens[7], line));
        out.aod_lobe_id.push_back(label(tokens[8], line));
        out.aoa_lobe_id.push_back(label(tokens[9], line));
    }
    if (out.paths.empty())
        throw parse_error(name, 1, "no path rows");
    return out;
}

std::string emit_paths(const PathsFile &f) {
    std::ostringstream os;
    os << "# mmwchan paths v1\n";
    os << "# version=" << k_toolkit_version << '\n';
    if (!f.scenario_tag.empty())
        os << "# scenario=" << f.scenario_tag << '\n';
    os << "# seed=" << f.seed << '\n';
    os << "# realization=" << f.realization << '\n';
    if (!f.config_hash.empty())
        os << "# config_hash=" << f.config_hash << '\n';
    os << "# power_unit=" << f.power_unit << '\n';
    os << "# columns: delay_ns power_db aod_az_deg aod_el_deg aoa_az_deg aoa_el_deg xpr_db "
          "cluster_id aod_lobe_id aoa_lobe_id\n";
    auto label = [](int v) { return v < 0 ? std::string("-") : std::to_string(v); };
    for (std::size_t i = 0; i < f.paths.size(); ++i) {
        const auto &p = f.paths[i];
        os << format_double(p.delay_ns) << ' ' << linear_to_db_token(p.power_mw) << ' '
           << format_double(p.aod_azimuth_deg) << ' ' << format_double(p.aod_elevation_deg)
           << ' ' << format_double(p.aoa_azimuth_deg) << ' '
           << format_double(p.aoa_elevation_deg) << ' ' << format_double(p.xpr_db) << ' '
           << label(f.cluster_id[i]) << ' ' << label(f.aod_lobe_id[i]) << ' '
           << label(f.aoa_lobe_id[i]) << '\n';
    }
    return os.str();
}

// ---- Manifest -------------------------------------------------------------------

std::string emit_manifest(const EnsembleManifest &m) {
    nlohmann::ordered_json j;
    j["format"] = "mmwchan-ensemble-manifest-v1";
    j["version"] = m.version;
    j["scenario"] = m.scenario_tag;
    j["scenario_section"] = m.scenario_section;
    j["seed"] = m.seed;
    j["count"] = m.count;
    j["config_hash"] = m.hash;
    j["files"] = m.files;
    return j.dump(2) + "\n";
}

EnsembleManifest parse_manifest(const std::string &text, const std::string &name) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw parse_error(name, 1, std::string("manifest is not valid JSON: ") + e.what());
    }
    try {
        EnsembleManifest m;
        if (j.at("format").get<std::string>() != "mmwchan-ensemble-manifest-v1")
            throw parse_error(name, 1, "unknown manifest format");
        m.version = j.at("version").get<std::string>();
        m.scenario_tag = j.at("scenario").get<std::string>();
        m.scenario_section = j.at("scenario_section").get<std::string>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.count = j.at("count").get<std::size_t>();
        m.hash = j.at("config_hash").get<std::string>();
        m.files = j.at("files").get<std::vector<std::string>>();
        return m;
    } catch (const nlohmann::json::exception &e) {
        throw parse_error(name, 1, std::string("manifest field error: ") + e.what());
    }
}

// ---- Report ----------------------------------------------------------------------

std::string format_report_text(const ValidationReport &report, const std::string &hash) {
    std::ostringstream os;
    os << "mmwchan validation report\n";
    os << "version " << k_toolkit_version << "  scenario " << report.scenario_tag << "  n "
       << report.sample_size << "  seed " << report.seed << "  config " << hash << "\n\n";
    char line[160];
    std::snprintf(line, sizeof(line), "  %-26s %12s %12s %11s  %s\n", "statistic", "reference",
                  "estimate", "tolerance", "verdict");
    os << line;
    for (const auto &row : report.rows) {
        std::snprintf(line, sizeof(line), "  %-26s %12.4f %12.4f %11.4f  %s\n",
                      row.name.c_str(), row.reference, row.estimate, row.tolerance,
                      row.pass ? "pass" : "FAIL");
        os << line;
    }
    os << "\nresult: " << (report.global_pass ? "PASS" : "FAIL") << '\n';
    for (const auto &w : report.warnings)
        os << "warning: " << w << '\n';
    return os.str();
}

std::string report_to_json(const ValidationReport &report, const std::string &hash) {
    nlohmann::ordered_json j;
    j["format"] = "mmwchan-validation-report-v1";
    j["version"] = k_toolkit_version;
    j["scenario"] = report.scenario_tag;
    j["sample_size"] = report.sample_size;
    j["seed"] = report.seed;
    j["config_hash"] = hash;
    j["global_pass"] = report.global_pass;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto &row : report.rows) {
        nlohmann::ordered_json r;
        r["name"] = row.name;
        r["reference"] = row.reference;
        r["estimate"] = std::isfinite(row.estimate) ? nlohmann::ordered_json(row.estimate)
                                                    : nlohmann::ordered_json(nullptr);
        r["tolerance"] = row.tolerance;
        r["pass"] = row.pass;
        j["rows"].push_back(std::move(r));
    }
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

// ---- Reference tables ---------------------------------------------------------------

const double *ReferenceTable::find(const std::string &table, const std::string &scenario,
                                   const std::string &statistic) const {
    for (const auto &r : rows)
        if (r.table == table && r.scenario == scenario && r.statistic == statistic)
            return &r.value;
    return nullptr;
}

ReferenceTable parse_reference(const std::string &text, const std::string &name) {
    const ParsedFile f = parse_delimited(text, name, "reference");
    ReferenceTable out;
    for (const auto &[line, tokens] : f.rows) {
        if (tokens.size() != 4)
            throw parse_error(name, line, "expected 'table scenario statistic value'");
        ReferenceTable::Row row;
        row.table = tokens[0];
        row.scenario = tokens[1];
        row.statistic = tokens[2];
        row.value = parse_double(tokens[3], name, line);
        out.rows.push_back(std::move(row));
    }
    return out;
}

ReferenceTable load_reference_file(const std::string &path) {
    return parse_reference(read_text_file(path), path);
}

// ---- Files ------------------------------------------------------------------------

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error(path, 0, "cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw parse_error(path, 0, "cannot open file for writing");
    out << content;
    if (!out)
        throw parse_error(path, 0, "write failed");
}

PdpFile load_pdp_file(const std::string &path) { return parse_pdp(read_text_file(path), path); }
void save_pdp_file(const std::string &path, const PdpFile &f) {
    write_text_file(path, emit_pdp(f));
}
PasFile load_pas_file(const std::string &path) { return parse_pas(read_text_file(path), path); }
void save_pas_file(const std::string &path, const PasFile &f) {
    write_text_file(path, emit_pas(f));
}
ScenarioFile load_scenario_file(const std::string &path) {
    return parse_scenarios(read_text_file(path), path);
}
void save_scenario_file(const std::string &path, const ScenarioFile &f) {
    write_text_file(path, emit_scenarios(f));
}
PathsFile load_paths_file(const std::string &path) {
    return parse_paths(read_text_file(path), path);
}
void save_paths_file(const std::string &path, const PathsFile &f) {
    write_text_file(path, emit_paths(f));
}
EnsembleManifest load_manifest(const std::string &path) {
    return parse_manifest(read_text_file(path), path);
}
void save_manifest(const std::string &path, const EnsembleManifest &m) {
    write_text_file(path, emit_manifest(m));
}

} // namespace mmwchan
