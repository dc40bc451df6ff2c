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

#ifndef MMWCHAN_TYPES_HPP
#define MMWCHAN_TYPES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mmwchan {

// Immutable value objects after construction; safe to share across workers.
// validate() throws invalid_input and is called at every ingest boundary.

/// Time-binned received power. Delay of bin i is i * bin_width_ns
/// (left-edge convention). Powers and noise floor are linear mW.
struct PowerDelayProfile {
    double bin_width_ns = 2.5;
    std::vector<double> powers_mw;
    double noise_floor_mw = 0.0;

    void validate() const;

    double total_power_mw() const;
    double peak_power_mw() const;
    std::size_t size() const { return powers_mw.size(); }
};

enum class AngleDomain { aoa, aod };

/// Received (or transmitted) power over a uniform azimuth x elevation grid.
/// Azimuth wraps circularly over [0, 360); elevation is degrees from the
/// horizon, positive up. Power is linear mW, row-major [azimuth][elevation].
struct PowerAngularSpectrum {
    std::vector<double> azimuth_deg;   // uniform step, covers the full circle
    std::vector<double> elevation_deg; // uniform step
    std::vector<double> power_mw;      // azimuth-major, size n_az * n_el

    void validate() const;

    std::size_t n_azimuth() const { return azimuth_deg.size(); }
    std::size_t n_elevation() const { return elevation_deg.size(); }
    double at(std::size_t az, std::size_t el) const {
        return power_mw[az * elevation_deg.size() + el];
    }
    double &at(std::size_t az, std::size_t el) {
        return power_mw[az * elevation_deg.size() + el];
    }
};

/// One resolvable propagation path.
struct MultipathComponent {
    double delay_ns = 0.0;
    double power_mw = 0.0; // strictly positive; a fraction of 1 for generated paths
    double aod_azimuth_deg = 0.0;
    double aod_elevation_deg = 0.0;
    double aoa_azimuth_deg = 0.0;
    double aoa_elevation_deg = 0.0;
    double xpr_db = 0.0; // truncated at zero by the generation model

    void validate() const;
};

/// An ordered set of multipath components with cluster and lobe labels.
/// Paths are sorted by delay; cluster labels are contiguous from 0.
struct ChannelImpulseResponse {
    std::vector<MultipathComponent> paths;
    std::vector<int> cluster_id;
    std::vector<int> aoa_lobe_id;
    std::vector<int> aod_lobe_id;
    std::string scenario_tag;

    void validate() const;

    std::size_t size() const { return paths.size(); }
    int cluster_count() const;
};

enum class LosCondition { los, los_to_nlos, nlos };

std::string to_string(LosCondition c);
LosCondition los_condition_from_string(const std::string &s);

/// Full per-scenario parameter set driving generation and validation.
/// Optional entries represent values unavailable from the measurements.
struct ScenarioParameters {
    double frequency_ghz = 0.0;
    LosCondition los_condition = LosCondition::nlos;

    double num_clusters_mu = 1.0;
    double num_clusters_sigma = 0.0;
    double num_subpaths_mu = 1.0;
    double num_subpaths_sigma = 0.0;

    double cluster_decay_gamma_ns = 1.0; // cluster power e-folding vs excess delay
    double subpath_decay_gamma_ns = 1.0; // subpath power e-folding inside a cluster
    double per_cluster_shadowing_db = 0.0;
    double per_subpath_shadowing_db = 0.0;

    double num_aod_lobes_mu = 1.0;
    double num_aod_lobes_sigma = 0.0;
    double num_aoa_lobes_mu = 1.0;
    double num_aoa_lobes_sigma = 0.0;

    double rms_lobe_asd_mu_deg = 0.0;
    double rms_lobe_asd_sigma_deg = 0.0;
    std::optional<double> rms_lobe_esd_mu_deg;    // missing for single-downtilt scans
    std::optional<double> rms_lobe_esd_sigma_deg;
    double rms_lobe_asa_mu_deg = 0.0;
    double rms_lobe_asa_sigma_deg = 0.0;
    double rms_lobe_esa_mu_deg = 0.0;
    double rms_lobe_esa_sigma_deg = 0.0;

    double xpr_mu_db = 0.0;
    double xpr_sigma_db = 0.0;

    double delay_scaling_r_ds_mu = 0.0;
    double delay_scaling_r_ds_sigma = 0.0;

    double inter_cluster_void_ns = 25.0;

    void validate() const;
};

/// Large-scale parameters of one measurement location.
struct LspRecord {
    std::string location_id;
    double tr_separation_m = 0.0;
    double asd_deg = 0.0;
    double asa_deg = 0.0;
    double zsa_deg = 0.0;
    double rms_ds_ns = 0.0;
    double sf_db = 0.0; // supplied externally by a path-loss pipeline
    double k_factor_db = 0.0;

    void validate() const;
};

} // namespace mmwchan

#endif
