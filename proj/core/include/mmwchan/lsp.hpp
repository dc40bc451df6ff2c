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

#ifndef MMWCHAN_LSP_HPP
#define MMWCHAN_LSP_HPP

#include <span>
#include <vector>

#include "mmwchan/types.hpp"

namespace mmwchan {

// Large-scale parameter extraction. All functions are pure and callable
// concurrently without coordination.

/// Power-weighted circular standard deviation of azimuth angles, in degrees.
///
/// Minimizes the weighted standard deviation of (delta + angle) mod 360 over
/// the rotation offset delta. The objective is piecewise constant in delta
/// with pieces separated by the wrap positions 360 - angle_i, so evaluating
/// one delta per piece attains the exact continuum minimum. Result lies in
/// [0, ~103.9] (the uniform-circle limit).
double circular_spread(std::span<const double> angles_deg, std::span<const double> powers_mw);

/// Uniform-grid variant of the delta search, kept for resolution studies.
/// Evaluates the objective at multiples of grid_step_deg only.
double circular_spread_grid(std::span<const double> angles_deg,
                            std::span<const double> powers_mw, double grid_step_deg);

/// Same spread formula applied over the elevation domain [-90, 90]. The
/// offset minimization is retained but cannot change the result for data
/// spanning less than a half circle.
double zenith_spread(std::span<const double> elevations_deg, std::span<const double> powers_mw);

/// Small-sample variants: divide the weighted variance by (1 - sum w_i^2)
/// with normalized weights, removing the downward bias of the weighted
/// estimator when few discrete paths carry the power. For dense spectra the
/// factor approaches 1.
double circular_spread_corrected(std::span<const double> angles_deg,
                                 std::span<const double> powers_mw);
double zenith_spread_corrected(std::span<const double> elevations_deg,
                               std::span<const double> powers_mw);

/// RMS delay spread in ns: power-weighted standard deviation of delay over
/// bins within threshold_db of the peak bin.
double rms_delay_spread(const PowerDelayProfile &pdp, double threshold_db = 30.0);

/// Ratio of the strongest component power to the sum of all the others,
/// in dB. Throws singular_k_factor when one component holds all the power.
double k_factor_db(std::span<const double> powers_mw);

/// PDP variant: components are the bins strictly above the noise floor.
double k_factor_db(const PowerDelayProfile &pdp);

/// Piecewise-linear local-mean model max(a * d + b, c) fitted by least
/// squares over (distance, log10 value) records.
struct ZsaFit {
    double slope_per_m = 0.0;  // a
    double intercept = 0.0;    // b
    double floor_level = 0.0;  // c
    double rss = 0.0;          // residual sum of squares of the fit
};

/// Exact segmented least squares: enumerates every consistent assignment of
/// records to the linear and floor branches (the active branch is always a
/// half-line in distance) and keeps the minimum-RSS candidate.
ZsaFit fit_zsa_local_mean(std::span<const double> distances_m,
                          std::span<const double> log10_values);

/// Per-bin co-to-cross polarization ratio in dB. A bin qualifies when both
/// polarizations exceed their noise floor by min_snr_db.
std::vector<double> xpr_per_bin(const PowerDelayProfile &pdp_vv, const PowerDelayProfile &pdp_vh,
                                double min_snr_db = 5.0);

struct GaussianFit {
    double mu_db = 0.0;
    double sigma_db = 0.0;
};

/// Recovers the pre-truncation (mu, sigma) of a max(N(mu, sigma^2), 0)
/// sample set by moment matching with numeric inversion of the truncated
/// first and second moments. Requires at least 30 non-negative samples.
GaussianFit fit_truncated_gaussian_xpr(std::span<const double> samples_db);

/// Pearson correlation coefficient of two paired sequences.
double cross_correlation(std::span<const double> x, std::span<const double> y);

/// Number of local power maxima at least snr_db above the noise floor.
/// A plateau of equal bins counts once; the threshold is inclusive.
int count_directional_multipaths(const PowerDelayProfile &pdp, double snr_db = 5.0);

/// Azimuth / zenith spreads of a full power angular spectrum, treating each
/// grid cell as one weighted sample.
double azimuth_spread_of_spectrum(const PowerAngularSpectrum &pas);
double zenith_spread_of_spectrum(const PowerAngularSpectrum &pas);

// Weighted-moment helpers shared across modules.
double weighted_mean(std::span<const double> values, std::span<const double> weights);
double weighted_std(std::span<const double> values, std::span<const double> weights);
double normalized_weight_square_sum(std::span<const double> weights);

} // namespace mmwchan

#endif
