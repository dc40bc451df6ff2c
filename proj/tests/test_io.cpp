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

#include <doctest.h>

#include <random>

#include "mmwchan/errors.hpp"
#include "mmwchan/generator.hpp"
#include "mmwchan/io.hpp"

using namespace mmwchan;

TEST_CASE("pdp files: parse-emit round trip preserves every field") {
    PdpFile f;
    f.profile.bin_width_ns = 2.5;
    f.profile.noise_floor_mw = 1e-10;
    f.profile.powers_mw = {0.0, 1.25e-7, 0.0, 3.5e-8, 0.0, 0.0};
    f.location_id = "SS4";
    f.frequency_ghz = 28.0;
    f.polarization = "VH";

    const PdpFile r = parse_pdp(emit_pdp(f), "roundtrip");
    CHECK(r.location_id == f.location_id);
    CHECK(r.frequency_ghz == f.frequency_ghz);
    CHECK(r.polarization == f.polarization);
    CHECK(r.profile.bin_width_ns == f.profile.bin_width_ns);
    REQUIRE(r.profile.powers_mw.size() == f.profile.powers_mw.size());
    // Powers travel in dB, so equality holds at the precision the format
    // carries; one round trip is then a fixed point of emit.
    CHECK(r.profile.noise_floor_mw ==
          doctest::Approx(f.profile.noise_floor_mw).epsilon(1e-12));
    for (std::size_t i = 0; i < f.profile.powers_mw.size(); ++i)
        CHECK(r.profile.powers_mw[i] ==
              doctest::Approx(f.profile.powers_mw[i]).epsilon(1e-12));
    CHECK(emit_pdp(parse_pdp(emit_pdp(f), "a")) == emit_pdp(f));
}

TEST_CASE("pdp files: parse errors carry line numbers") {
    const std::string bad = "# mmwchan pdp v1\n"
                            "# bin_width_ns=2.5\n"
                            "# noise_floor_dbm=-100\n"
                            "# location_id=X\n"
                            "# n_bins=4\n"
                            "0 -70\n"
                            "0 -71\n"; // repeated index
    CHECK_THROWS_WITH_AS(parse_pdp(bad, "bad.tsv"),
                         "bad.tsv:7: bin indices must be strictly increasing", parse_error);

    const std::string garbled = "# mmwchan pdp v1\n"
                                "# bin_width_ns=2.5\n"
                                "# noise_floor_dbm=-100\n"
                                "# location_id=X\n"
                                "# n_bins=4\n"
                                "1 notanumber\n";
    CHECK_THROWS_AS(parse_pdp(garbled, "g.tsv"), parse_error);
    const std::string wrong_kind = "# mmwchan pas v1\n";
    CHECK_THROWS_AS(parse_pdp(wrong_kind, "k.tsv"), parse_error);
}

TEST_CASE("pas files: round trip and zenith conversion") {
    PasFile f;
    f.location_id = "SS2";
    f.domain = AngleDomain::aod;
    f.spectrum.azimuth_deg = {0.0, 120.0, 240.0};
    f.spectrum.elevation_deg = {-10.0, 0.0};
    f.spectrum.power_mw = {0.0, 1e-6, 2e-6, 0.0, 5e-7, 0.0};

    const PasFile r = parse_pas(emit_pas(f), "roundtrip");
    CHECK(r.domain == AngleDomain::aod);
    CHECK(r.spectrum.azimuth_deg == f.spectrum.azimuth_deg);
    CHECK(r.spectrum.elevation_deg == f.spectrum.elevation_deg);
    for (std::size_t i = 0; i < f.spectrum.power_mw.size(); ++i) {
        if (f.spectrum.power_mw[i] == 0.0)
            CHECK(r.spectrum.power_mw[i] == 0.0);
        else
            CHECK(r.spectrum.power_mw[i] ==
                  doctest::Approx(f.spectrum.power_mw[i]).epsilon(1e-12));
    }
    CHECK(emit_pas(parse_pas(emit_pas(f), "a")) == emit_pas(f));

    // Zenith-convention input: 90 means the horizon.
    const std::string zenith_text = "# mmwchan pas v1\n"
                                    "# azimuth_step_deg=180\n"
                                    "# elevation_levels=90,80\n"
                                    "# location_id=Z\n"
                                    "# domain=AOA\n"
                                    "# elevation_convention=zenith\n"
                                    "0 90 -60\n"
                                    "0 80 -61\n"
                                    "180 90 -62\n"
                                    "180 80 -63\n";
    const PasFile z = parse_pas(zenith_text, "z.tsv");
    CHECK(z.spectrum.elevation_deg == std::vector<double>{0.0, 10.0});
}

TEST_CASE("pas files: incomplete or duplicated grids are rejected") {
    const std::string dup = "# mmwchan pas v1\n"
                            "# azimuth_step_deg=180\n"
                            "# elevation_levels=0\n"
                            "# location_id=D\n"
                            "# domain=AOA\n"
                            "0 0 -60\n"
                            "0 0 -61\n";
    CHECK_THROWS_WITH_AS(parse_pas(dup, "d.tsv"), "d.tsv:7: duplicate grid cell", parse_error);

    const std::string missing = "# mmwchan pas v1\n"
                                "# azimuth_step_deg=180\n"
                                "# elevation_levels=0\n"
                                "# location_id=M\n"
                                "# domain=AOA\n"
                                "0 0 -60\n";
    CHECK_THROWS_AS(parse_pas(missing, "m.tsv"), parse_error);
}

TEST_CASE("scenario files: the shipped sets parse, validate and round trip") {
    const ScenarioFile file =
        load_scenario_file(std::string(MMWCHAN_DATA_DIR) + "/scenarios.txt");
    CHECK(file.sections.size() == 5);
    const ScenarioParameters *nlos28 = file.find("28GHz-NLOS");
    REQUIRE(nlos28 != nullptr);
    CHECK(nlos28->num_clusters_mu == 2.1);
    CHECK(nlos28->cluster_decay_gamma_ns == 49.4);
    CHECK(nlos28->xpr_mu_db == 16.7);
    CHECK(!nlos28->rms_lobe_esd_mu_deg.has_value());

    const ScenarioParameters *nlos73 = file.find("73GHz-NLOS");
    REQUIRE(nlos73 != nullptr);
    CHECK(nlos73->num_aoa_lobes_mu == 2.5);
    CHECK(nlos73->rms_lobe_esd_mu_deg.has_value());
    CHECK(*nlos73->rms_lobe_esd_mu_deg == 2.2);

    const ScenarioFile again = parse_scenarios(emit_scenarios(file), "roundtrip");
    REQUIRE(again.sections.size() == file.sections.size());
    for (std::size_t i = 0; i < file.sections.size(); ++i) {
        CHECK(again.sections[i].first == file.sections[i].first);
        CHECK(emit_scenarios(again) == emit_scenarios(file));
    }
}

TEST_CASE("scenario files: unknown keys and broken sections are rejected") {
    const std::string unknown = "# mmwchan scenarios v1\n"
                                "[X]\n"
                                "frequency_ghz = 28\n"
                                "made_up_key = 3\n";
    CHECK_THROWS_WITH_AS(parse_scenarios(unknown, "u.txt"),
                         "u.txt:4: unknown scenario key 'made_up_key'", parse_error);

    const std::string invalid = "# mmwchan scenarios v1\n"
                                "[X]\n"
                                "frequency_ghz = 28\n"
                                "cluster_decay_gamma_ns = 0\n";
    CHECK_THROWS_AS(parse_scenarios(invalid, "i.txt"), parse_error);
}

TEST_CASE("paths files: generated responses round trip exactly") {
    GeneratorConfig cfg;
    cfg.scenario =
        *load_scenario_file(std::string(MMWCHAN_DATA_DIR) + "/scenarios.txt").find("28GHz-NLOS");
    cfg.rng_seed = 7;
    const auto cir = generate_cir(cfg, 3);
    const PathsFile f = PathsFile::from_cir(cir, 7, 3, config_hash(cfg));

    const std::string text = emit_paths(f);
    const PathsFile r = parse_paths(text, "roundtrip");
    CHECK(emit_paths(r) == text); // shortest round-trip decimals are stable
    CHECK(r.scenario_tag == "28GHz-NLOS");
    CHECK(r.seed == 7);
    CHECK(r.realization == 3);
    const ChannelImpulseResponse back = r.to_cir();
    CHECK(back.size() == cir.size());
    for (std::size_t i = 0; i < cir.size(); ++i) {
        CHECK(back.paths[i].delay_ns == cir.paths[i].delay_ns);
        CHECK(back.paths[i].power_mw ==
              doctest::Approx(cir.paths[i].power_mw).epsilon(1e-12));
        CHECK(back.cluster_id[i] == cir.cluster_id[i]);
    }
}

TEST_CASE("paths files: unlabeled lists stay loadable but not liftable") {
    const std::string text = "# mmwchan paths v1\n"
                             "# power_unit=dBm\n"
                             "0 -70 10 0 20 0 - - - -\n"
                             "5 -72 11 0 21 0 - - - -\n";
    const PathsFile f = parse_paths(text, "plain");
    CHECK(!f.has_cluster_labels());
    CHECK(f.paths.size() == 2);
    CHECK_THROWS_AS(f.to_cir(), invalid_input);
}

TEST_CASE("manifest round trip") {
    EnsembleManifest m;
    m.scenario_tag = "73GHz-NLOS";
    m.scenario_section = "73GHz-NLOS";
    m.seed = 42;
    m.count = 3;
    m.hash = "0123456789abcdef";
    m.files = {"cir_000000.tsv", "cir_000001.tsv", "cir_000002.tsv"};
    const EnsembleManifest r = parse_manifest(emit_manifest(m), "m.json");
    CHECK(r.scenario_tag == m.scenario_tag);
    CHECK(r.seed == m.seed);
    CHECK(r.count == m.count);
    CHECK(r.files == m.files);
    CHECK_THROWS_AS(parse_manifest("{not json", "x.json"), parse_error);
}

TEST_CASE("reference tables: campaign anchors are shipped") {
    const ReferenceTable ref =
        load_reference_file(std::string(MMWCHAN_DATA_DIR) + "/measured_reference.txt");
    const double *ds_vs_sf = ref.find("crosscorr", "28GHz-NLOS", "ds_vs_sf");
    REQUIRE(ds_vs_sf != nullptr);
    CHECK(*ds_vs_sf == -0.508);
    const double *asa = ref.find("kpm", "28GHz-NLOS", "cluster_asa_mu_deg");
    REQUIRE(asa != nullptr);
    CHECK(*asa == 9.6);
    CHECK(ref.find("lsp", "nowhere", "nothing") == nullptr);
}

TEST_CASE("config hash is stable and sensitive") {
    GeneratorConfig cfg;
    cfg.scenario =
        *load_scenario_file(std::string(MMWCHAN_DATA_DIR) + "/scenarios.txt").find("28GHz-NLOS");
    const std::string h1 = config_hash(cfg);
    CHECK(h1.size() == 16);
    CHECK(config_hash(cfg) == h1);
    GeneratorConfig other = cfg;
    other.scenario.cluster_decay_gamma_ns += 0.1;
    CHECK(config_hash(other) != h1);
}

TEST_CASE("report serialization carries provenance and verdicts") {
    ValidationReport report;
    report.scenario_tag = "28GHz-NLOS";
    report.sample_size = 10;
    report.seed = 5;
    report.global_pass = false;
    report.rows.push_back({"cluster_count_mean", 2.1, 2.4, 0.15, false});
    report.rows.push_back({"xpr_mu_db", 16.7, 16.75, 0.3, true});
    report.warnings.push_back("sample size 10 is small");

    const std::string text = format_report_text(report, "deadbeefdeadbeef");
    CHECK(text.find("cluster_count_mean") != std::string::npos);
    CHECK(text.find("FAIL") != std::string::npos);
    CHECK(text.find("deadbeefdeadbeef") != std::string::npos);

    const std::string json = report_to_json(report, "deadbeefdeadbeef");
    CHECK(json.find("\"global_pass\": false") != std::string::npos);
    CHECK(json.find("\"seed\": 5") != std::string::npos);
}
