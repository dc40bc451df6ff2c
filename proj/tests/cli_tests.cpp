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
// End-to-end exercises of the command-line surface. Spawns the real binary
// against fixture files in a scratch directory and checks outputs and the
// exit-code contract (0 pass, 1 validation fail, 2 usage, 3 data error).

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "support/approx.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "mmwchan/io.hpp"
#include "mmwchan/units.hpp"

namespace fs = std::filesystem;
using namespace mmwchan;

namespace {

std::string g_binary;
std::string g_scenarios;
fs::path g_work;

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout and stderr combined
};

RunResult run(const std::string &args) {
    const std::string cmd = g_binary + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fgets(buf.data(), buf.size(), pipe))
        r.output += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("generate: reproducible ensembles with manifest and plot files") {
    const fs::path out_a = g_work / "ens_a";
    const fs::path out_b = g_work / "ens_b";
    const std::string base = "generate --scenario " + g_scenarios +
                             ":28GHz-NLOS --count 5 --seed 3 --out ";
    const RunResult a = run(base + out_a.string());
    CHECK(a.exit_code == 0);
    CHECK(a.output.find("mmwchan") != std::string::npos);
    CHECK(a.output.find("seed 3") != std::string::npos);
    CHECK(fs::exists(out_a / "manifest.json"));
    CHECK(fs::exists(out_a / "cir_000000.tsv"));
    CHECK(fs::exists(out_a / "cir_000004.tsv"));
    CHECK(fs::exists(out_a / "delay_power.tsv"));
    CHECK(fs::exists(out_a / "angle_power.tsv"));

    const RunResult b = run(base + out_b.string());
    CHECK(b.exit_code == 0);
    // Hash-stable: identical seed and scenario give identical files.
    CHECK(slurp(out_a / "cir_000000.tsv") == slurp(out_b / "cir_000000.tsv"));
    CHECK(slurp(out_a / "manifest.json") == slurp(out_b / "manifest.json"));

    const EnsembleManifest m = load_manifest((out_a / "manifest.json").string());
    CHECK(m.count == 5);
    CHECK(m.scenario_tag == "28GHz-NLOS");
    CHECK(m.hash.size() == 16);
}

TEST_CASE("generate: usage and data errors") {
    CHECK(run("generate --scenario " + g_scenarios + ":28GHz-NLOS --count 0 --out " +
              (g_work / "zero").string())
              .exit_code == 2);
    const RunResult unknown = run("generate --scenario " + g_scenarios +
                                  ":9GHz-MOON --count 1 --out " + (g_work / "nope").string());
    CHECK(unknown.exit_code == 3);
    CHECK(unknown.output.find("available sections") != std::string::npos);
    CHECK(unknown.output.find("28GHz-NLOS") != std::string::npos);
}

TEST_CASE("validate: matched ensemble passes, cross-scenario names the failing row") {
    const fs::path out = g_work / "ens_val";
    REQUIRE(run("generate --scenario " + g_scenarios +
                ":73GHz-NLOS --count 600 --seed 11 --threads 4 --out " + out.string())
                .exit_code == 0);

    const RunResult pass = run("validate --ensemble " + out.string() + " --scenario " +
                               g_scenarios + ":73GHz-NLOS --threads 4");
    CHECK(pass.exit_code == 0);
    CHECK(pass.output.find("result: PASS") != std::string::npos);
    CHECK(fs::exists(out / "report.json"));

    const RunResult fail = run("validate --ensemble " + out.string() + " --scenario " +
                               g_scenarios + ":28GHz-NLOS --threads 4");
    CHECK(fail.exit_code == 1);
    CHECK(fail.output.find("warning") != std::string::npos);
    CHECK(fail.output.find("cluster_count_mean") != std::string::npos);
    CHECK(fail.output.find("FAIL") != std::string::npos);
}

TEST_CASE("validate: an empty directory is a data error without a report") {
    const fs::path empty = g_work / "empty_dir";
    fs::create_directories(empty);
    const RunResult r = run("validate --ensemble " + empty.string() + " --scenario " +
                            g_scenarios + ":28GHz-NLOS");
    CHECK(r.exit_code == 3);
    CHECK(!fs::exists(empty / "report.json"));
}

TEST_CASE("extract: delay spreads and polarization columns") {
    // Two-tap equal-power profile: delay spread is half the separation.
    PdpFile vv;
    vv.location_id = "L1";
    vv.frequency_ghz = 28.0;
    vv.polarization = "VV";
    vv.profile.bin_width_ns = 2.5;
    vv.profile.noise_floor_mw = db_to_linear(-100.0);
    vv.profile.powers_mw.assign(41, 0.0);
    vv.profile.powers_mw[0] = db_to_linear(-60.0);
    vv.profile.powers_mw[40] = db_to_linear(-60.0);
    save_pdp_file((g_work / "l1_vv.tsv").string(), vv);

    PdpFile vh = vv;
    vh.polarization = "VH";
    for (auto &p : vh.profile.powers_mw)
        p /= 10.0; // VV = 10 * VH everywhere
    save_pdp_file((g_work / "l1_vh.tsv").string(), vh);

    // Single-tap profile at a second location.
    PdpFile single;
    single.location_id = "L2";
    single.polarization = "VV";
    single.profile.bin_width_ns = 2.5;
    single.profile.noise_floor_mw = db_to_linear(-100.0);
    single.profile.powers_mw.assign(10, 0.0);
    single.profile.powers_mw[4] = db_to_linear(-70.0);
    save_pdp_file((g_work / "l2_vv.tsv").string(), single);

    const fs::path out = g_work / "extract_out";
    const RunResult r = run("extract --pdp " + (g_work / "l1_vv.tsv").string() + " " +
                            (g_work / "l1_vh.tsv").string() + " " +
                            (g_work / "l2_vv.tsv").string() + " --out " + out.string());
    CHECK(r.exit_code == 0);

    // Parse the record rows: location_id frequency ds asd asa zsa k sf n xpr_mean xpr_std
    std::istringstream table(slurp(out / "lsp_records.tsv"));
    std::map<std::string, std::vector<std::string>> rows;
    std::string line;
    while (std::getline(table, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream is(line);
        std::vector<std::string> tokens;
        std::string t;
        while (is >> t)
            tokens.push_back(t);
        REQUIRE(tokens.size() == 11);
        rows[tokens[0]] = tokens;
    }
    REQUIRE(rows.count("L1"));
    REQUIRE(rows.count("L2"));
    CHECK(std::stod(rows["L1"][2]) == testutil::near(50.0, 1e-9));  // two equal taps
    CHECK(std::stod(rows["L1"][9]) == testutil::near(10.0, 1e-9));  // XPR mean
    CHECK(std::stod(rows["L1"][10]) == testutil::near(0.0, 1e-9)); // XPR std
    CHECK(std::stod(rows["L2"][2]) == testutil::near(0.0, 1e-12)); // single tap
    CHECK(rows["L2"][9] == "-");                                   // no VH profile
    CHECK(fs::exists(out / "summary.json"));
}

TEST_CASE("cluster: the joint search reports the planted count") {
    // Three well-separated groups in delay and angle.
    PathsFile file;
    for (int c = 0; c < 3; ++c) {
        for (int j = 0; j < 15; ++j) {
            MultipathComponent p;
            p.delay_ns = 100.0 + 250.0 * c + 2.0 * j / 15.0;
            p.power_mw = db_to_linear(-60.0 - j % 5);
            p.aoa_azimuth_deg = wrap_360(120.0 * c + 1.5 * (j % 7));
            p.aod_azimuth_deg = wrap_360(60.0 + 120.0 * c + 1.5 * (j % 5));
            file.paths.push_back(p);
            file.cluster_id.push_back(-1);
            file.aoa_lobe_id.push_back(-1);
            file.aod_lobe_id.push_back(-1);
        }
    }
    save_paths_file((g_work / "planted.tsv").string(), file);

    const fs::path out = g_work / "cluster_out";
    const RunResult r = run("cluster --paths " + (g_work / "planted.tsv").string() +
                            " --method kpm --k-range 2..6 --seed 7 --restarts 20 --out " +
                            out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("selected K* = 3") != std::string::npos);
    CHECK(r.output.find("K = 1 is excluded") != std::string::npos);
    CHECK(fs::exists(out / "labels.tsv"));
    CHECK(fs::exists(out / "kscores.tsv"));
    CHECK(fs::exists(out / "summary.json"));

    const PathsFile labeled = load_paths_file((out / "labels.tsv").string());
    CHECK(labeled.has_cluster_labels());
}

TEST_CASE("cluster: a range touching K = 1 is a usage error") {
    const RunResult r = run("cluster --paths " + (g_work / "planted.tsv").string() +
                            " --method kpm --k-range 1..5 --out " +
                            (g_work / "bad_range").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("undefined") != std::string::npos);
    CHECK(r.output.find("K = 1") != std::string::npos);
}

TEST_CASE("cluster: delay-domain method splits a two-burst list") {
    PathsFile file;
    for (double d : {0.0, 3.0, 6.0, 50.0, 52.0}) {
        MultipathComponent p;
        p.delay_ns = d;
        p.power_mw = db_to_linear(-65.0);
        file.paths.push_back(p);
        file.cluster_id.push_back(-1);
        file.aoa_lobe_id.push_back(-1);
        file.aod_lobe_id.push_back(-1);
    }
    save_paths_file((g_work / "bursts.tsv").string(), file);
    const RunResult r = run("cluster --paths " + (g_work / "bursts.tsv").string() +
                            " --method tcsl --out " + (g_work / "tcsl_out").string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("time clusters: 2") != std::string::npos);
}

TEST_CASE("scenario lookup falls back to the environment default") {
    const fs::path out = g_work / "env_out";
    const std::string cmd = "MMWCHAN_SCENARIOS=" + g_scenarios + " " + g_binary +
                            " generate --scenario 73GHz-LOS --count 2 --seed 1 --out " +
                            out.string() + " 2>&1";
    std::array<char, 4096> buf{};
    std::string output;
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fgets(buf.data(), buf.size(), pipe))
        output += buf.data();
    const int status = pclose(pipe);
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(output.find("73GHz-LOS") != std::string::npos);
}

int main(int argc, char **argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: cli_tests <mmwchan-binary> <scenario-file>\n");
        return 2;
    }
    g_binary = argv[1];
    g_scenarios = argv[2];
    char tmpl[] = "/tmp/mmwchan_cli_XXXXXX";
    if (!mkdtemp(tmpl)) {
        std::fprintf(stderr, "cannot create scratch directory\n");
        return 1;
    }
    g_work = tmpl;
    doctest::Context context;
    const int rc = context.run();
    fs::remove_all(g_work);
    return rc;
}
