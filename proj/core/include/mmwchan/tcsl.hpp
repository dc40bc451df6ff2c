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

#ifndef MMWCHAN_TCSL_HPP
#define MMWCHAN_TCSL_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mmwchan/types.hpp"

namespace mmwchan {

// Physically-based partitioning: time clusters are delay runs separated by a
// minimum silent void interval; spatial lobes are contiguous angular regions
// above a power threshold relative to the spectrum peak.

/// One time cluster. member_indices refer to PDP bins or to path indices,
/// depending on which partition routine produced the cluster.
struct TimeCluster {
    double start_ns = 0.0;
    double end_ns = 0.0;
    std::vector<std::size_t> member_indices;
    double power_mw = 0.0;
    double excess_delay_ns = 0.0; // of the first member, relative to the first arrival
};

/// Splits the occupied bins of a PDP into time clusters. A bin is occupied
/// when it exceeds the noise floor by occupancy_snr_db; a silent gap of at
/// least void_ns separates clusters (the boundary gap splits).
std::vector<TimeCluster> partition_time_clusters(const PowerDelayProfile &pdp,
                                                 double void_ns = 25.0,
                                                 double occupancy_snr_db = 5.0);

/// Path-list variant over exact delays (must be sorted non-decreasing).
std::vector<TimeCluster> partition_time_clusters_paths(std::span<const double> delays_ns,
                                                       std::span<const double> powers_mw,
                                                       double void_ns = 25.0);

/// A contiguous angular segment of the spectrum above the lobe threshold.
struct SpatialLobe {
    AngleDomain domain = AngleDomain::aoa;
    std::vector<std::pair<std::size_t, std::size_t>> cells; // (azimuth, elevation) indices
    double peak_azimuth_deg = 0.0;
    double peak_elevation_deg = 0.0;
    double power_mw = 0.0;
};

/// Connected components (4-neighborhood, azimuth wraps) of cells whose power
/// reaches peak * 10^(threshold_db / 10). Lobes are sorted by power,
/// strongest first. threshold_db is typically -10 or -20.
std::vector<SpatialLobe> extract_spatial_lobes(const PowerAngularSpectrum &pas,
                                               double threshold_db,
                                               AngleDomain domain = AngleDomain::aoa);

struct LobeSpreads {
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
};

/// Power-weighted circular spread (azimuth) and weighted standard deviation
/// (elevation) over the lobe's member cells.
LobeSpreads lobe_rms_spreads(const PowerAngularSpectrum &pas, const SpatialLobe &lobe);

struct SummaryStat {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t count = 0;
};

/// Ensemble-level summary of the time-cluster / spatial-lobe parameters.
struct TcslSummary {
    SummaryStat cluster_count;
    SummaryStat subpaths_per_cluster;
    double cluster_decay_gamma_ns = 0.0; // pooled, per-profile demeaned dB regression
    double subpath_decay_gamma_ns = 0.0; // pooled, per-cluster demeaned dB regression
    bool cluster_decay_valid = false;
    bool subpath_decay_valid = false;
    double per_cluster_shadowing_db = 0.0;  // residual spread about the cluster decay
    double per_subpath_shadowing_db = 0.0;  // residual spread about the subpath decay
    SummaryStat aod_lobe_count;
    SummaryStat aoa_lobe_count;
    SummaryStat rms_lobe_asd_deg;
    SummaryStat rms_lobe_esd_deg;
    SummaryStat rms_lobe_asa_deg;
    SummaryStat rms_lobe_esa_deg;
};

/// Summary over measured-style inputs: omnidirectional PDPs plus arrival and
/// departure power angular spectra.
TcslSummary tcsl_summary(std::span<const PowerDelayProfile> pdps,
                         std::span<const PowerAngularSpectrum> aoa_spectra,
                         std::span<const PowerAngularSpectrum> aod_spectra,
                         double lobe_threshold_db = -10.0, double void_ns = 25.0,
                         double occupancy_snr_db = 5.0);

/// Controls the re-extraction of TCSL statistics from generated impulse
/// responses. Paths are rendered onto an angular grid through a Gaussian
/// beam kernel, standing in for the directional-antenna smoothing that
/// shapes measured spectra; lobe segmentation then runs on the rendered
/// spectrum. Lobe spreads are computed from the member paths' exact angles
/// with the small-sample weight correction, so the kernel does not inflate
/// them. Lobes with fewer than two member paths carry no spread information
/// and are skipped by the spread statistics.
struct CirExtractionOptions {
    double void_ns = 25.0;
    double lobe_threshold_db = -20.0;
    double grid_step_deg = 2.0;
    double beam_kernel_sigma_deg = 6.0; // 0 disables the smoothing
};

/// Renders the per-path angular power of one domain onto a grid spectrum.
PowerAngularSpectrum render_angular_spectrum(const ChannelImpulseResponse &cir,
                                             AngleDomain domain,
                                             const CirExtractionOptions &opts = {});

struct CirLobeStats {
    int lobe_count = 0;
    std::vector<double> azimuth_spreads_deg;   // one entry per lobe with >= 2 paths
    std::vector<double> elevation_spreads_deg; // aligned with azimuth_spreads_deg
};

/// Lobe count and per-lobe spreads of one impulse response in one domain.
CirLobeStats extract_cir_lobe_stats(const ChannelImpulseResponse &cir, AngleDomain domain,
                                    const CirExtractionOptions &opts = {});

/// Summary over a generated ensemble, re-extracted from exact path lists.
TcslSummary tcsl_summary(std::span<const ChannelImpulseResponse> ensemble,
                         const CirExtractionOptions &opts = {}, unsigned n_threads = 1);

/// Pooled exponential-decay fit: regresses dB power on delay after removing
/// each group's mean, so per-group normalization and shadowing offsets drop
/// out. Groups with fewer than two points contribute nothing.
class PooledDecayFit {
  public:
    void add_group(std::span<const double> delays_ns, std::span<const double> powers_mw);

    bool valid() const;
    double gamma_ns() const;        // decay constant; requires valid()
    double residual_std_db() const; // shadowing estimate about the fitted decay

  private:
    std::vector<double> m_dx; // demeaned delays
    std::vector<double> m_dy; // demeaned dB powers
};

} // namespace mmwchan

#endif
