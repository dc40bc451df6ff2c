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

#include "mmwchan/types.hpp"

#include <algorithm>
#include <cmath>

#include "mmwchan/errors.hpp"

namespace mmwchan {

namespace {

void require(bool ok, const char *msg) {
    if (!ok)
        throw invalid_input(msg);
}

bool uniform_steps(const std::vector<double> &grid, double tol = 1e-9) {
    if (grid.size() < 2)
        return true;
    const double step = grid[1] - grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs((grid[i] - grid[i - 1]) - step) > tol)
            return false;
    return step > 0.0;
}

} // namespace

void PowerDelayProfile::validate() const {
    require(bin_width_ns > 0.0, "PowerDelayProfile: bin_width_ns must be positive");
    require(!powers_mw.empty(), "PowerDelayProfile: empty power sequence");
    require(noise_floor_mw >= 0.0, "PowerDelayProfile: negative noise floor");
    for (double p : powers_mw)
        require(std::isfinite(p) && p >= 0.0, "PowerDelayProfile: powers must be finite and >= 0");
}

double PowerDelayProfile::total_power_mw() const {
    double s = 0.0;
    for (double p : powers_mw)
        s += p;
    return s;
}

double PowerDelayProfile::peak_power_mw() const {
    double m = 0.0;
    for (double p : powers_mw)
        m = std::max(m, p);
    return m;
}

void PowerAngularSpectrum::validate() const {
    require(!azimuth_deg.empty() && !elevation_deg.empty(),
            "PowerAngularSpectrum: empty angle grid");
    require(power_mw.size() == azimuth_deg.size() * elevation_deg.size(),
            "PowerAngularSpectrum: power matrix size does not match the grid");
    require(uniform_steps(azimuth_deg), "PowerAngularSpectrum: azimuth grid steps not uniform");
    require(uniform_steps(elevation_deg), "PowerAngularSpectrum: elevation grid steps not uniform");
    for (double a : azimuth_deg)
        require(a >= 0.0 && a < 360.0, "PowerAngularSpectrum: azimuth must lie in [0, 360)");
    // The circular wrap is only well defined when the grid covers the circle.
    if (azimuth_deg.size() > 1) {
        const double step = azimuth_deg[1] - azimuth_deg[0];
        require(std::abs(step * static_cast<double>(azimuth_deg.size()) - 360.0) < 1e-6,
                "PowerAngularSpectrum: azimuth grid must cover the full circle");
    }
    for (double e : elevation_deg)
        require(e >= -90.0 && e <= 90.0, "PowerAngularSpectrum: elevation must lie in [-90, 90]");
    for (double p : power_mw)
        require(std::isfinite(p) && p >= 0.0,
                "PowerAngularSpectrum: powers must be finite and >= 0");
}

void MultipathComponent::validate() const {
    require(std::isfinite(delay_ns) && delay_ns >= 0.0, "MultipathComponent: negative delay");
    require(std::isfinite(power_mw) && power_mw > 0.0,
            "MultipathComponent: power must be strictly positive");
    require(aod_azimuth_deg >= 0.0 && aod_azimuth_deg < 360.0,
            "MultipathComponent: AOD azimuth out of [0, 360)");
    require(aoa_azimuth_deg >= 0.0 && aoa_azimuth_deg < 360.0,
            "MultipathComponent: AOA azimuth out of [0, 360)");
    require(aod_elevation_deg >= -90.0 && aod_elevation_deg <= 90.0,
            "MultipathComponent: AOD elevation out of [-90, 90]");
    require(aoa_elevation_deg >= -90.0 && aoa_elevation_deg <= 90.0,
            "MultipathComponent: AOA elevation out of [-90, 90]");
    require(std::isfinite(xpr_db) && xpr_db >= 0.0, "MultipathComponent: XPR must be >= 0 dB");
}

void ChannelImpulseResponse::validate() const {
    require(!paths.empty(), "ChannelImpulseResponse: no paths");
    require(cluster_id.size() == paths.size() && aoa_lobe_id.size() == paths.size() &&
                aod_lobe_id.size() == paths.size(),
            "ChannelImpulseResponse: label vectors must match the path count");
    for (const auto &p : paths)
        p.validate();
    for (std::size_t i = 1; i < paths.size(); ++i)
        require(paths[i].delay_ns >= paths[i - 1].delay_ns,
                "ChannelImpulseResponse: delays must be non-decreasing");

    const int k = *std::max_element(cluster_id.begin(), cluster_id.end()) + 1;
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    for (int c : cluster_id) {
        require(c >= 0 && c < k, "ChannelImpulseResponse: cluster label out of range");
        seen[static_cast<std::size_t>(c)] = 1;
    }
    for (char s : seen)
        require(s == 1, "ChannelImpulseResponse: cluster labels must be contiguous from 0");
}

int ChannelImpulseResponse::cluster_count() const {
    int k = -1;
    for (int c : cluster_id)
        k = std::max(k, c);
    return k + 1;
}

std::string to_string(LosCondition c) {
    switch (c) {
    case LosCondition::los:
        return "LOS";
    case LosCondition::los_to_nlos:
        return "LOS-to-NLOS";
    default:
        return "NLOS";
    }
}

LosCondition los_condition_from_string(const std::string &s) {
    if (s == "LOS")
        return LosCondition::los;
    if (s == "LOS-to-NLOS")
        return LosCondition::los_to_nlos;
    if (s == "NLOS")
        return LosCondition::nlos;
    throw invalid_input("unknown LOS condition: " + s);
}

void ScenarioParameters::validate() const {
    require(frequency_ghz > 0.0, "ScenarioParameters: frequency must be positive");
    require(num_clusters_mu >= 1.0 && num_subpaths_mu >= 1.0 && num_aod_lobes_mu >= 1.0 &&
                num_aoa_lobes_mu >= 1.0,
            "ScenarioParameters: count means must be >= 1");
    require(num_clusters_sigma >= 0.0 && num_subpaths_sigma >= 0.0 &&
                num_aod_lobes_sigma >= 0.0 && num_aoa_lobes_sigma >= 0.0,
            "ScenarioParameters: count sigmas must be >= 0");
    require(cluster_decay_gamma_ns > 0.0 && subpath_decay_gamma_ns > 0.0,
            "ScenarioParameters: decay constants must be positive");
    require(per_cluster_shadowing_db >= 0.0 && per_subpath_shadowing_db >= 0.0,
            "ScenarioParameters: shadowing sigmas must be >= 0");
    require(rms_lobe_asd_mu_deg >= 0.0 && rms_lobe_asa_mu_deg >= 0.0 &&
                rms_lobe_esa_mu_deg >= 0.0,
            "ScenarioParameters: lobe spread means must be >= 0");
    require(rms_lobe_asd_sigma_deg >= 0.0 && rms_lobe_asa_sigma_deg >= 0.0 &&
                rms_lobe_esa_sigma_deg >= 0.0,
            "ScenarioParameters: lobe spread sigmas must be >= 0");
    require(rms_lobe_esd_mu_deg.has_value() == rms_lobe_esd_sigma_deg.has_value(),
            "ScenarioParameters: lobe ESD mean and sigma must be set together");
    if (rms_lobe_esd_mu_deg)
        require(*rms_lobe_esd_mu_deg >= 0.0 && *rms_lobe_esd_sigma_deg >= 0.0,
                "ScenarioParameters: lobe ESD values must be >= 0");
    require(xpr_sigma_db >= 0.0, "ScenarioParameters: XPR sigma must be >= 0");
    require(delay_scaling_r_ds_sigma >= 0.0, "ScenarioParameters: r_DS sigma must be >= 0");
    require(inter_cluster_void_ns > 0.0, "ScenarioParameters: void interval must be positive");
}

void LspRecord::validate() const {
    require(asd_deg >= 0.0 && asa_deg >= 0.0 && zsa_deg >= 0.0 && rms_ds_ns >= 0.0,
            "LspRecord: spreads must be >= 0");
    require(zsa_deg <= 90.0, "LspRecord: ZSA cannot exceed 90 degrees");
    require(tr_separation_m >= 0.0, "LspRecord: negative T-R separation");
}

} // namespace mmwchan
