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

#ifndef MMWCHAN_IO_HPP
#define MMWCHAN_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmwchan/generator.hpp"
#include "mmwchan/types.hpp"
#include "mmwchan/validate.hpp"

namespace mmwchan {

// Delimited-text data files with a versioned first line. Powers are stored
// in dB (dBm for measurements, dB re the strongest-path normalization for
// generated responses) and converted to linear at load. Doubles round-trip
// exactly: emitters write shortest-round-trip decimal forms.

inline constexpr const char *k_toolkit_version = "0.1.0";

std::string format_double(double v);
double parse_double(const std::string &token, const std::string &file, std::size_t line);

std::uint64_t fnv1a64(std::string_view data);

/// Stable hex hash of every generation-relevant configuration field.
std::string config_hash(const GeneratorConfig &config);

// ---- PDP files ----------------------------------------------------------

struct PdpFile {
    PowerDelayProfile profile;
    std::string location_id;
    double frequency_ghz = 0.0;
    std::string polarization = "VV"; // VV or VH
};

PdpFile parse_pdp(const std::string &text, const std::string &name);
std::string emit_pdp(const PdpFile &f);
PdpFile load_pdp_file(const std::string &path);
void save_pdp_file(const std::string &path, const PdpFile &f);

// ---- PAS files ----------------------------------------------------------

struct PasFile {
    PowerAngularSpectrum spectrum; // elevation already in horizon convention
    std::string location_id;
    AngleDomain domain = AngleDomain::aoa;
};

PasFile parse_pas(const std::string &text, const std::string &name);
std::string emit_pas(const PasFile &f);
PasFile load_pas_file(const std::string &path);
void save_pas_file(const std::string &path, const PasFile &f);

// ---- Scenario files -----------------------------------------------------

struct ScenarioFile {
    std::vector<std::pair<std::string, ScenarioParameters>> sections;

    const ScenarioParameters *find(const std::string &name) const;
    std::vector<std::string> section_names() const;
};

ScenarioFile parse_scenarios(const std::string &text, const std::string &name);
std::string emit_scenarios(const ScenarioFile &f);
ScenarioFile load_scenario_file(const std::string &path);
void save_scenario_file(const std::string &path, const ScenarioFile &f);

// ---- Path list / impulse response files ---------------------------------

struct PathsFile {
    std::vector<MultipathComponent> paths;
    std::vector<int> cluster_id;  // -1 when unknown
    std::vector<int> aoa_lobe_id; // -1 when unknown
    std::vector<int> aod_lobe_id;
    std::string scenario_tag;
    std::uint64_t seed = 0;
    std::uint64_t realization = 0;
    std::string config_hash;
    std::string power_unit = "dBm"; // dBm or dB_rel

    bool has_cluster_labels() const;
    ChannelImpulseResponse to_cir() const; // requires cluster labels
    static PathsFile from_cir(const ChannelImpulseResponse &cir, std::uint64_t seed,
                              std::uint64_t realization, const std::string &hash);
};

PathsFile parse_paths(const std::string &text, const std::string &name);
std::string emit_paths(const PathsFile &f);
PathsFile load_paths_file(const std::string &path);
void save_paths_file(const std::string &path, const PathsFile &f);

// ---- Ensemble manifest ----------------------------------------------------

struct EnsembleManifest {
    std::string scenario_tag;
    std::string scenario_section;
    std::uint64_t seed = 0;
    std::size_t count = 0;
    std::string hash;
    std::string version = k_toolkit_version;
    std::vector<std::string> files;
};

std::string emit_manifest(const EnsembleManifest &m);
EnsembleManifest parse_manifest(const std::string &text, const std::string &name);
EnsembleManifest load_manifest(const std::string &path);
void save_manifest(const std::string &path, const EnsembleManifest &m);

// ---- Validation report ----------------------------------------------------

/// Human-readable table, one line per statistic plus the verdict.
std::string format_report_text(const ValidationReport &report, const std::string &hash);

/// Machine-readable document (JSON; schema ships under data/).
std::string report_to_json(const ValidationReport &report, const std::string &hash);

// ---- Measured reference tables ---------------------------------------------

/// Campaign statistics shipped as data. These summarize the original
/// measurement dataset and cannot be re-derived from generated ensembles;
/// they serve as documentation anchors and comparison references only.
struct ReferenceTable {
    struct Row {
        std::string table;
        std::string scenario;
        std::string statistic;
        double value = 0.0;
    };
    std::vector<Row> rows;

    const double *find(const std::string &table, const std::string &scenario,
                       const std::string &statistic) const;
};

ReferenceTable parse_reference(const std::string &text, const std::string &name);
ReferenceTable load_reference_file(const std::string &path);

// ---- Small helpers --------------------------------------------------------

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &content);

} // namespace mmwchan

#endif
