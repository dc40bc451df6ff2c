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
//
// Command-line surface: extract / cluster / generate / validate.
// Exit codes: 0 success or validation pass, 1 validation fail,
//             2 usage error, 3 data error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmwchan/errors.hpp"
#include "mmwchan/generator.hpp"
#include "mmwchan/io.hpp"
#include "mmwchan/kpowermeans.hpp"
#include "mmwchan/lsp.hpp"
#include "mmwchan/tcsl.hpp"
#include "mmwchan/units.hpp"
#include "mmwchan/validate.hpp"

namespace fs = std::filesystem;
using namespace mmwchan;

namespace {

constexpr int k_exit_ok = 0;
constexpr int k_exit_validation_fail = 1;
constexpr int k_exit_usage = 2;
constexpr int k_exit_data = 3;

#ifndef MMWCHAN_DEFAULT_SCENARIO_FILE
#define MMWCHAN_DEFAULT_SCENARIO_FILE ""
#endif

std::string default_scenario_file() {
    if (const char *env = std::getenv("MMWCHAN_SCENARIOS"); env && *env)
        return env;
    return MMWCHAN_DEFAULT_SCENARIO_FILE;
}

struct ScenarioRef {
    std::string file;
    std::string section;
};

ScenarioRef split_scenario_ref(const std::string &ref) {
    const std::size_t colon = ref.rfind(':');
    if (colon == std::string::npos) {
        const std::string file = default_scenario_file();
        if (file.empty())
            throw invalid_input("no scenario file given and MMWCHAN_SCENARIOS is unset");
        return {file, ref};
    }
    return {ref.substr(0, colon), ref.substr(colon + 1)};
}

std::pair<ScenarioParameters, std::string> resolve_scenario(const std::string &ref) {
    const ScenarioRef r = split_scenario_ref(ref);
    const ScenarioFile file = load_scenario_file(r.file);
    const ScenarioParameters *sc = file.find(r.section);
    if (!sc) {
        std::string names;
        for (const auto &n : file.section_names())
            names += (names.empty() ? "" : ", ") + n;
        throw invalid_input("scenario section '" + r.section + "' not found in " + r.file +
                            "; available sections: " + names);
    }
    return {*sc, r.section};
}

void print_provenance(const std::string &scenario_tag, std::uint64_t seed,
                      const std::string &hash) {
    std::cout << "mmwchan " << k_toolkit_version << " | scenario " << scenario_tag
              << " | seed " << seed << " | config " << hash << "\n";
}

std::string cir_file_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "cir_%06zu.tsv", index);
    return buf;
}

// ---- generate ---------------------------------------------------------------

int run_generate(const std::string &scenario_ref, std::size_t count, std::uint64_t seed,
                 const std::string &out_dir, unsigned threads) {
    const auto [scenario, section] = resolve_scenario(scenario_ref);
    GeneratorConfig config;
    config.scenario = scenario;
    config.rng_seed = seed;
    config.validate();
    const std::string hash = config_hash(config);

    const auto ensemble = generate_ensemble(config, count, threads);

    fs::create_directories(out_dir);
    EnsembleManifest manifest;
    manifest.scenario_tag = scenario_tag_of(scenario);
    manifest.scenario_section = section;
    manifest.seed = seed;
    manifest.count = count;
    manifest.hash = hash;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const std::string name = cir_file_name(i);
        save_paths_file((fs::path(out_dir) / name).string(),
                        PathsFile::from_cir(ensemble[i], seed, i, hash));
        manifest.files.push_back(name);
    }
    save_manifest((fs::path(out_dir) / "manifest.json").string(), manifest);

    // Plot-ready ensemble aggregates: mean power versus delay and azimuth.
    {
        const double bin = 2.5;
        std::vector<double> delay_power;
        for (const auto &cir : ensemble)
            for (const auto &p : cir.paths) {
                const auto b = static_cast<std::size_t>(p.delay_ns / bin);
                if (delay_power.size() <= b)
                    delay_power.resize(b + 1, 0.0);
                delay_power[b] += p.power_mw;
            }
        std::string text = "# mmwchan plot v1\n# columns: delay_ns mean_power_fraction\n";
        for (std::size_t b = 0; b < delay_power.size(); ++b)
            text += format_double(static_cast<double>(b) * bin) + " " +
                    format_double(delay_power[b] / static_cast<double>(count)) + "\n";
        write_text_file((fs::path(out_dir) / "delay_power.tsv").string(), text);
    }
    {
        std::vector<double> aoa(360, 0.0), aod(360, 0.0);
        for (const auto &cir : ensemble)
            for (const auto &p : cir.paths) {
                aoa[static_cast<std::size_t>(p.aoa_azimuth_deg) % 360] += p.power_mw;
                aod[static_cast<std::size_t>(p.aod_azimuth_deg) % 360] += p.power_mw;
            }
        std::string text =
            "# mmwchan plot v1\n# columns: azimuth_deg mean_aoa_power mean_aod_power\n";
        for (std::size_t a = 0; a < 360; ++a)
            text += std::to_string(a) + " " +
                    format_double(aoa[a] / static_cast<double>(count)) + " " +
                    format_double(aod[a] / static_cast<double>(count)) + "\n";
        write_text_file((fs::path(out_dir) / "angle_power.tsv").string(), text);
    }

    print_provenance(manifest.scenario_tag, seed, hash);
    std::cout << "wrote " << count << " impulse responses to " << out_dir << "\n";
    return k_exit_ok;
}

// ---- validate ---------------------------------------------------------------

int run_validate(const std::string &ensemble_dir, const std::string &scenario_ref,
                 double tolerance_scale, unsigned threads) {
    const fs::path manifest_path = fs::path(ensemble_dir) / "manifest.json";
    if (!fs::exists(manifest_path))
        throw parse_error(manifest_path.string(), 0, "ensemble manifest not found");
    const EnsembleManifest manifest = load_manifest(manifest_path.string());

    const auto [scenario, section] = resolve_scenario(scenario_ref);
    const std::string expected_tag = scenario_tag_of(scenario);
    const bool cross_scenario = manifest.scenario_tag != expected_tag;
    if (cross_scenario)
        std::cerr << "warning: ensemble was generated for scenario '" << manifest.scenario_tag
                  << "' but is being validated against '" << expected_tag
                  << "'; expect failing rows\n";

    std::vector<ChannelImpulseResponse> ensemble;
    ensemble.reserve(manifest.files.size());
    for (const auto &name : manifest.files) {
        ensemble.push_back(load_paths_file((fs::path(ensemble_dir) / name).string()).to_cir());
        if (cross_scenario)
            ensemble.back().scenario_tag.clear(); // compare the statistics anyway
    }

    ToleranceConfig tolerances;
    tolerances.scale = tolerance_scale;
    ValidationReport report = validate_ensemble(ensemble, scenario, tolerances, {}, threads);
    report.seed = manifest.seed;

    const std::string text = format_report_text(report, manifest.hash);
    std::cout << text;
    write_text_file((fs::path(ensemble_dir) / "report.json").string(),
                    report_to_json(report, manifest.hash));
    return report.global_pass ? k_exit_ok : k_exit_validation_fail;
}

// ---- extract ----------------------------------------------------------------

int run_extract(const std::vector<std::string> &pdp_paths,
                const std::vector<std::string> &pas_paths, const std::string &out_dir,
                double ds_threshold_db, double snr_db) {
    if (pdp_paths.empty() && pas_paths.empty())
        throw invalid_input("extract: no input files");

    struct Location {
        std::optional<PdpFile> vv, vh;
        std::optional<PasFile> aoa, aod;
    };
    std::map<std::string, Location> locations;
    for (const auto &path : pdp_paths) {
        PdpFile f = load_pdp_file(path);
        auto &loc = locations[f.location_id];
        auto &slot = f.polarization == "VH" ? loc.vh : loc.vv;
        if (slot)
            throw invalid_input("extract: duplicate " + f.polarization + " profile for location " +
                                f.location_id);
        slot = std::move(f);
    }
    for (const auto &path : pas_paths) {
        PasFile f = load_pas_file(path);
        auto &loc = locations[f.location_id];
        auto &slot = f.domain == AngleDomain::aoa ? loc.aoa : loc.aod;
        if (slot)
            throw invalid_input("extract: duplicate spectrum for location " + f.location_id);
        slot = std::move(f);
    }

    fs::create_directories(out_dir);
    char settings_hash[17];
    std::snprintf(settings_hash, sizeof(settings_hash), "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a64("extract|" + format_double(ds_threshold_db) + "|" +
                              format_double(snr_db))));
    std::string table = "# mmwchan lsp-records v1\n"
                        "# columns: location_id frequency_ghz rms_ds_ns asd_deg asa_deg "
                        "zsa_deg k_factor_db sf_db n_directional xpr_mean_db xpr_std_db\n";
    nlohmann::ordered_json summary;
    summary["format"] = "mmwchan-extract-summary-v1";
    summary["version"] = k_toolkit_version;
    summary["seed"] = 0;
    summary["config_hash"] = settings_hash;
    summary["settings"] = {{"ds_threshold_db", ds_threshold_db}, {"snr_db", snr_db}};
    summary["locations"] = nlohmann::ordered_json::array();

    auto opt_str = [](std::optional<double> v) {
        return v ? format_double(*v) : std::string("-");
    };
    for (auto &[id, loc] : locations) {
        const PdpFile *pdp = loc.vv ? &*loc.vv : (loc.vh ? &*loc.vh : nullptr);
        std::optional<double> ds, kf, asd, asa, zsa, xpr_mean, xpr_std;
        std::optional<int> n_dir;
        double freq = 0.0;
        nlohmann::ordered_json entry;
        entry["location_id"] = id;
        if (pdp) {
            freq = pdp->frequency_ghz;
            ds = rms_delay_spread(pdp->profile, ds_threshold_db);
            try {
                kf = k_factor_db(pdp->profile);
            } catch (const singular_k_factor &) {
                entry["k_factor_note"] = "singular: one component carries all the power";
            }
            n_dir = count_directional_multipaths(pdp->profile, snr_db);
        }
        if (loc.aoa) {
            asa = azimuth_spread_of_spectrum(loc.aoa->spectrum);
            zsa = zenith_spread_of_spectrum(loc.aoa->spectrum);
        }
        if (loc.aod)
            asd = azimuth_spread_of_spectrum(loc.aod->spectrum);
        if (loc.vv && loc.vh) {
            const auto xpr = xpr_per_bin(loc.vv->profile, loc.vh->profile, snr_db);
            const std::vector<double> ones(xpr.size(), 1.0);
            xpr_mean = weighted_mean(xpr, ones);
            xpr_std = weighted_std(xpr, ones);
            entry["xpr_db"] = xpr;
        }
        table += id + " " + format_double(freq) + " " + opt_str(ds) + " " + opt_str(asd) +
                 " " + opt_str(asa) + " " + opt_str(zsa) + " " + opt_str(kf) + " - " +
                 (n_dir ? std::to_string(*n_dir) : std::string("-")) + " " +
                 opt_str(xpr_mean) + " " + opt_str(xpr_std) + "\n";
        auto put_opt = [&entry](const char *key, std::optional<double> v) {
            if (v)
                entry[key] = *v;
        };
        put_opt("rms_ds_ns", ds);
        put_opt("k_factor_db", kf);
        put_opt("asd_deg", asd);
        put_opt("asa_deg", asa);
        put_opt("zsa_deg", zsa);
        put_opt("xpr_mean_db", xpr_mean);
        put_opt("xpr_std_db", xpr_std);
        if (n_dir)
            entry["n_directional"] = *n_dir;
        summary["locations"].push_back(std::move(entry));
    }

    write_text_file((fs::path(out_dir) / "lsp_records.tsv").string(), table);
    write_text_file((fs::path(out_dir) / "summary.json").string(), summary.dump(2) + "\n");
    std::cout << "mmwchan " << k_toolkit_version << " | seed 0 | config " << settings_hash
              << " | extracted " << locations.size() << " locations to " << out_dir << "\n";
    std::cout << table;
    return k_exit_ok;
}

// ---- cluster ----------------------------------------------------------------

int run_cluster(const std::string &paths_file, const std::string &method,
                const std::string &k_range, std::uint64_t seed, int restarts, double zeta,
                double void_ns, const std::string &out_dir) {
    PathsFile input = load_paths_file(paths_file);
    fs::create_directories(out_dir);
    char settings_hash[17];
    std::snprintf(settings_hash, sizeof(settings_hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(
                      "cluster|" + method + "|" + k_range + "|" + std::to_string(restarts) +
                      "|" + format_double(zeta) + "|" + format_double(void_ns))));

    if (method == "tcsl") {
        // Delay-domain partitioning over the exact path delays.
        std::vector<std::size_t> order(input.paths.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return input.paths[a].delay_ns < input.paths[b].delay_ns;
        });
        std::vector<double> delays, powers;
        for (std::size_t i : order) {
            delays.push_back(input.paths[i].delay_ns);
            powers.push_back(input.paths[i].power_mw);
        }
        const auto clusters = partition_time_clusters_paths(delays, powers, void_ns);
        for (std::size_t c = 0; c < clusters.size(); ++c)
            for (std::size_t member : clusters[c].member_indices)
                input.cluster_id[order[member]] = static_cast<int>(c);
        save_paths_file((fs::path(out_dir) / "labels.tsv").string(), input);
        std::cout << "mmwchan " << k_toolkit_version << " | method tcsl | seed " << seed
                  << " | config " << settings_hash << "\n";
        std::cout << "time clusters: " << clusters.size() << "\n";
        for (std::size_t c = 0; c < clusters.size(); ++c)
            std::cout << "  cluster " << c << ": " << clusters[c].member_indices.size()
                      << " paths, [" << format_double(clusters[c].start_ns) << ", "
                      << format_double(clusters[c].end_ns) << "] ns\n";
        return k_exit_ok;
    }
    if (method != "kpm")
        throw invalid_input("cluster: method must be kpm or tcsl");

    int k_min = 0, k_max = 0;
    {
        const std::size_t dots = k_range.find("..");
        if (dots == std::string::npos)
            throw invalid_input("cluster: --k-range must look like 2..8");
        k_min = static_cast<int>(std::stol(k_range.substr(0, dots)));
        k_max = static_cast<int>(std::stol(k_range.substr(dots + 2)));
    }
    if (k_min < 2) {
        std::cerr << "error: K = " << k_min
                  << " is not searchable: the variance-ratio validity score has an undefined "
                     "numerator at K = 1, so the search range starts at 2\n";
        return k_exit_usage;
    }
    std::cerr << "note: K = 1 is excluded from the search by construction; single-cluster "
                 "channels are therefore never reported\n";

    const McdParams params = McdParams::from_paths(input.paths, zeta);
    const OptimalKResult result =
        select_optimal_k(input.paths, k_min, k_max, params, restarts, seed);
    ClusterPartition refined = combine_validate(result.partition, input.paths, params);
    refined = shape_pruning(refined, input.paths, params);
    const ClusterStats stats = cluster_statistics(refined, input.paths);

    for (std::size_t i = 0; i < input.paths.size(); ++i)
        input.cluster_id[i] = refined.assignments[i];
    save_paths_file((fs::path(out_dir) / "labels.tsv").string(), input);

    std::string scores = "# mmwchan kscores v1\n# columns: k objective ch db\n";
    for (const auto &s : result.scores)
        scores += std::to_string(s.k) + " " + format_double(s.objective) + " " +
                  format_double(s.ch) + " " + format_double(s.db) + "\n";
    write_text_file((fs::path(out_dir) / "kscores.tsv").string(), scores);

    nlohmann::ordered_json j;
    j["format"] = "mmwchan-cluster-summary-v1";
    j["version"] = k_toolkit_version;
    j["seed"] = seed;
    j["config_hash"] = settings_hash;
    j["method"] = "kpm";
    j["k_star"] = result.k_star;
    j["k_after_refinement"] = refined.k();
    j["num_pruned"] =
        std::count(refined.pruned.begin(), refined.pruned.end(), static_cast<char>(1));
    j["cluster_asd_deg"] = stats.asd_deg;
    j["cluster_asa_deg"] = stats.asa_deg;
    j["cluster_zsd_deg"] = stats.zsd_deg;
    j["cluster_zsa_deg"] = stats.zsa_deg;
    j["subpath_counts"] = stats.subpath_counts;
    j["per_cluster_shadowing_db"] = stats.per_cluster_shadowing_db;
    write_text_file((fs::path(out_dir) / "summary.json").string(), j.dump(2) + "\n");

    std::cout << "mmwchan " << k_toolkit_version << " | method kpm | seed " << seed
              << " | config " << settings_hash << "\n";
    std::cout << "selected K* = " << result.k_star << " (after refinement: " << refined.k()
              << " clusters)\n";
    std::cout << "k objective ch db\n";
    for (const auto &s : result.scores)
        std::cout << s.k << " " << format_double(s.objective) << " " << format_double(s.ch)
                  << " " << format_double(s.db) << "\n";
    return k_exit_ok;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"mmwchan: millimeter-wave multipath channel statistics toolkit"};
    app.require_subcommand(1);

    // extract
    auto *extract = app.add_subcommand(
        "extract", "Extract large-scale parameters from PDP and PAS files");
    std::vector<std::string> pdp_paths, pas_paths;
    std::string extract_out = "extract_out";
    double ds_threshold_db = 30.0, snr_db = 5.0;
    extract->add_option("--pdp", pdp_paths, "Power delay profile files");
    extract->add_option("--pas", pas_paths, "Power angular spectrum files");
    extract->add_option("--out", extract_out, "Output directory");
    extract->add_option("--ds-threshold-db", ds_threshold_db,
                        "Delay-spread threshold below the peak");
    extract->add_option("--snr-db", snr_db, "SNR threshold for peaks and XPR bins");

    // cluster
    auto *cluster = app.add_subcommand("cluster", "Cluster a multipath list");
    std::string paths_file, method = "kpm", k_range = "2..10", cluster_out = "cluster_out";
    std::uint64_t cluster_seed = 1;
    int restarts = 50;
    double zeta = 1.0, void_ns = 25.0;
    cluster->add_option("--paths", paths_file, "Multipath list file")->required();
    cluster->add_option("--method", method, "kpm or tcsl");
    cluster->add_option("--k-range", k_range, "Cluster-count search range, e.g. 2..8");
    cluster->add_option("--seed", cluster_seed, "Random seed");
    cluster->add_option("--restarts", restarts, "Restarts per K");
    cluster->add_option("--zeta", zeta, "Delay-term weight of the component distance");
    cluster->add_option("--void-ns", void_ns, "Minimum inter-cluster void interval (tcsl)");
    cluster->add_option("--out", cluster_out, "Output directory");

    // generate
    auto *generate = app.add_subcommand(
        "generate", "Generate a stochastic impulse-response ensemble");
    std::string gen_scenario, gen_out = "ensemble_out";
    std::size_t gen_count = 0;
    std::uint64_t gen_seed = 1;
    unsigned gen_threads = 1;
    generate->add_option("--scenario", gen_scenario, "Scenario reference <file:section>")
        ->required();
    generate->add_option("--count", gen_count, "Number of realizations")
        ->required()
        ->check(CLI::PositiveNumber);
    generate->add_option("--seed", gen_seed, "Master seed");
    generate->add_option("--out", gen_out, "Output directory");
    generate->add_option("--threads", gen_threads, "Worker threads");

    // validate
    auto *validate = app.add_subcommand(
        "validate", "Validate an ensemble against a scenario");
    std::string val_dir, val_scenario;
    double tolerance_scale = 1.0;
    unsigned val_threads = 1;
    validate->add_option("--ensemble", val_dir, "Ensemble directory")->required();
    validate->add_option("--scenario", val_scenario, "Scenario reference <file:section>")
        ->required();
    validate->add_option("--tolerance-scale", tolerance_scale, "Tolerance multiplier");
    validate->add_option("--threads", val_threads, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? k_exit_ok : k_exit_usage;
    }

    try {
        if (extract->parsed())
            return run_extract(pdp_paths, pas_paths, extract_out, ds_threshold_db, snr_db);
        if (cluster->parsed())
            return run_cluster(paths_file, method, k_range, cluster_seed, restarts, zeta,
                               void_ns, cluster_out);
        if (generate->parsed())
            return run_generate(gen_scenario, gen_count, gen_seed, gen_out, gen_threads);
        if (validate->parsed())
            return run_validate(val_dir, val_scenario, tolerance_scale, val_threads);
    } catch (const parse_error &e) {
        std::cerr << "data error: " << e.what() << "\n";
        return k_exit_data;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return k_exit_data;
    }
    return k_exit_usage;
}
