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

#ifndef MMWCHAN_VALIDATE_HPP
#define MMWCHAN_VALIDATE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mmwchan/tcsl.hpp"
#include "mmwchan/types.hpp"

namespace mmwchan {

// Ensemble validation: re-extracts the cluster, lobe and polarization
// statistics of an ensemble and compares them to a reference scenario row
// by row within tolerance bands.

struct ToleranceConfig {
    double count_abs = 0.15;            // cluster and lobe count means
    double subpath_count_abs = 0.5;     // subpaths carry a heavier tail
    double decay_rel = 0.10;            // Gamma and gamma, relative
    double xpr_abs_db = 0.3;
    double lobe_spread_abs_deg = 0.5;
    double reference_sample_size = 1e4; // tolerances are quoted at this size
    double scale = 1.0;                 // user multiplier (--tolerance-scale)

    /// Effective band: base * scale * max(1, sqrt(reference / n)), so small
    /// smoke ensembles do not fail on sampling noise alone.
    double effective(double base, std::size_t n) const;
};

struct ValidationRow {
    std::string name;
    double reference = 0.0;
    double estimate = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    bool global_pass = false; // true iff every row passes
    std::size_t sample_size = 0;
    std::uint64_t seed = 0; // carried from the ensemble manifest when known
    std::string scenario_tag;
    std::vector<std::string> warnings;
};

/// Re-extracts TCSL statistics and the XPR distribution from the ensemble
/// and checks them against the scenario. Throws invalid_input when the
/// ensemble was generated for a different scenario.
ValidationReport validate_ensemble(std::span<const ChannelImpulseResponse> ensemble,
                                   const ScenarioParameters &scenario,
                                   const ToleranceConfig &tolerances = {},
                                   const CirExtractionOptions &extraction = {},
                                   unsigned n_threads = 1);

/// Pearson correlation matrix over the six large-scale parameters, in the
/// domains used for their statistics: log10 for DS / ASD / ASA / ZSA, dB
/// for SF and K. Degenerate columns are flagged undefined.
struct LspCorrelationMatrix {
    static constexpr std::array<const char *, 6> names{"DS", "ASD", "ASA",
                                                       "ZSA", "SF", "K"};
    std::array<std::array<double, 6>, 6> value{};
    std::array<std::array<bool, 6>, 6> defined{};
};

LspCorrelationMatrix lsp_correlation_matrix(std::span<const LspRecord> records);

} // namespace mmwchan

#endif
