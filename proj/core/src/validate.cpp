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

#include "mmwchan/validate.hpp"

#include <cmath>

#include "mmwchan/errors.hpp"
#include "mmwchan/generator.hpp"
#include "mmwchan/lsp.hpp"

namespace mmwchan {

double ToleranceConfig::effective(double base, std::size_t n) const {
    const double widen =
        std::max(1.0, std::sqrt(reference_sample_size / std::max<double>(1.0, n)));
    return base * scale * widen;
}

ValidationReport validate_ensemble(std::span<const ChannelImpulseResponse> ensemble,
                                   const ScenarioParameters &scenario,
                                   const ToleranceConfig &tolerances,
                                   const CirExtractionOptions &extraction,
                                   unsigned n_threads) {
    if (ensemble.empty())
        throw invalid_input("validate_ensemble: empty ensemble");
    scenario.validate();

    const std::string expected_tag = scenario_tag_of(scenario);
    for (const auto &cir : ensemble)
        if (!cir.scenario_tag.empty() && cir.scenario_tag != expected_tag)
            throw invalid_input("validate_ensemble: ensemble tagged '" + cir.scenario_tag +
                                "' does not match scenario '" + expected_tag + "'");

    ValidationReport report;
    report.sample_size = ensemble.size();
    report.scenario_tag = expected_tag;
    if (ensemble.size() < 30)
        report.warnings.push_back(
            "sample size " + std::to_string(ensemble.size()) +
            " is too small for tight estimates; tolerance bands were widened");

    const TcslSummary summary = tcsl_summary(ensemble, extraction, n_threads);
    const std::size_t n = ensemble.size();

    auto add_row = [&](const std::string &name, double reference, double estimate,
                       double tol) {
        ValidationRow row;
        row.name = name;
        row.reference = reference;
        row.estimate = estimate;
        row.tolerance = tol;
        row.pass = std::isfinite(estimate) && std::abs(estimate - reference) <= tol;
        report.rows.push_back(std::move(row));
    };

    add_row("cluster_count_mean", scenario.num_clusters_mu, summary.cluster_count.mean,
            tolerances.effective(tolerances.count_abs, n));
    add_row("subpath_count_mean", scenario.num_subpaths_mu, summary.subpaths_per_cluster.mean,
            tolerances.effective(tolerances.subpath_count_abs, n));
    add_row("cluster_decay_gamma_ns", scenario.cluster_decay_gamma_ns,
            summary.cluster_decay_valid ? summary.cluster_decay_gamma_ns
                                        : std::nan(""),
            tolerances.effective(tolerances.decay_rel * scenario.cluster_decay_gamma_ns, n));
    add_row("subpath_decay_gamma_ns", scenario.subpath_decay_gamma_ns,
            summary.subpath_decay_valid ? summary.subpath_decay_gamma_ns
                                        : std::nan(""),
            tolerances.effective(tolerances.decay_rel * scenario.subpath_decay_gamma_ns, n));
    add_row("aod_lobe_count_mean", scenario.num_aod_lobes_mu, summary.aod_lobe_count.mean,
            tolerances.effective(tolerances.count_abs, n));
    add_row("aoa_lobe_count_mean", scenario.num_aoa_lobes_mu, summary.aoa_lobe_count.mean,
            tolerances.effective(tolerances.count_abs, n));
    add_row("rms_lobe_asd_mean_deg", scenario.rms_lobe_asd_mu_deg, summary.rms_lobe_asd_deg.mean,
            tolerances.effective(tolerances.lobe_spread_abs_deg, n));
    if (scenario.rms_lobe_esd_mu_deg)
        add_row("rms_lobe_esd_mean_deg", *scenario.rms_lobe_esd_mu_deg,
                summary.rms_lobe_esd_deg.mean,
                tolerances.effective(tolerances.lobe_spread_abs_deg, n));
    add_row("rms_lobe_asa_mean_deg", scenario.rms_lobe_asa_mu_deg, summary.rms_lobe_asa_deg.mean,
            tolerances.effective(tolerances.lobe_spread_abs_deg, n));
    add_row("rms_lobe_esa_mean_deg", scenario.rms_lobe_esa_mu_deg, summary.rms_lobe_esa_deg.mean,
            tolerances.effective(tolerances.lobe_spread_abs_deg, n));

    // Polarization: refit the truncation model over all path samples.
    std::vector<double> xpr;
    for (const auto &cir : ensemble)
        for (const auto &p : cir.paths)
            xpr.push_back(p.xpr_db);
    double xpr_mu, xpr_sigma;
    if (xpr.size() >= 30) {
        const GaussianFit fit = fit_truncated_gaussian_xpr(xpr);
        xpr_mu = fit.mu_db;
        xpr_sigma = fit.sigma_db;
    } else {
        report.warnings.push_back("fewer than 30 polarization samples; plain moments used");
        xpr_mu = weighted_mean(xpr, std::vector<double>(xpr.size(), 1.0));
        xpr_sigma = weighted_std(xpr, std::vector<double>(xpr.size(), 1.0));
    }
    add_row("xpr_mu_db", scenario.xpr_mu_db, xpr_mu,
            tolerances.effective(tolerances.xpr_abs_db, n));
    add_row("xpr_sigma_db", scenario.xpr_sigma_db, xpr_sigma,
            tolerances.effective(tolerances.xpr_abs_db, n));

    report.global_pass = true;
    for (const auto &row : report.rows)
        report.global_pass = report.global_pass && row.pass;
    return report;
}

LspCorrelationMatrix lsp_correlation_matrix(std::span<const LspRecord> records) {
    if (records.size() < 3)
        throw invalid_input("lsp_correlation_matrix: need at least 3 records");

    // Column extraction in the statistic domains.
    std::array<std::vector<double>, 6> cols;
    std::array<bool, 6> col_ok{true, true, true, true, true, true};
    for (const auto &r : records) {
        const std::array<double, 6> raw{r.rms_ds_ns, r.asd_deg, r.asa_deg,
                                        r.zsa_deg, r.sf_db, r.k_factor_db};
        for (std::size_t c = 0; c < 6; ++c) {
            const bool log_domain = c < 4;
            if (log_domain && !(raw[c] > 0.0)) {
                col_ok[c] = false;
                cols[c].push_back(0.0);
            } else {
                cols[c].push_back(log_domain ? std::log10(raw[c]) : raw[c]);
            }
        }
    }
    // Degenerate (zero-variance) columns are undefined as well.
    for (std::size_t c = 0; c < 6; ++c) {
        if (!col_ok[c])
            continue;
        const double first = cols[c].front();
        bool varies = false;
        for (double v : cols[c])
            varies |= v != first;
        col_ok[c] = varies;
    }

    LspCorrelationMatrix m;
    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = 0; b < 6; ++b) {
            if (a == b) {
                m.value[a][b] = 1.0;
                m.defined[a][b] = col_ok[a];
            } else if (col_ok[a] && col_ok[b]) {
                m.value[a][b] = cross_correlation(cols[a], cols[b]);
                m.defined[a][b] = true;
            } else {
                m.value[a][b] = std::nan("");
                m.defined[a][b] = false;
            }
        }
    }
    return m;
}

} // namespace mmwchan
