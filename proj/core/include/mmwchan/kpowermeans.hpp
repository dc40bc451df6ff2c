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

#ifndef MMWCHAN_KPOWERMEANS_HPP
#define MMWCHAN_KPOWERMEANS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mmwchan/types.hpp"

namespace mmwchan {

// Joint delay-angle clustering with the multipath component distance (MCD).
//
// MCD^2 = |u_aod1 - u_aod2|^2 / 4 + |u_aoa1 - u_aoa2|^2 / 4
//       + (zeta * (|dtau| / tau_max) * (tau_std / tau_max))^2
//
// where u are unit direction vectors and tau_max, tau_std are the delay
// range and delay standard deviation of the path set under analysis.

struct McdParams {
    double delay_scaling_zeta = 1.0;
    double delay_spread_norm_ns = 1.0; // tau_max: normalization of the delay term
    double delay_std_ns = 0.0;         // tau_std: overall delay standard deviation

    /// Derives tau_max (delay range) and tau_std from the path set.
    static McdParams from_paths(std::span<const MultipathComponent> paths, double zeta = 1.0);

    void validate() const;
};

/// Symmetric premetric over paths; zero iff delay, AOD and AOA coincide.
/// The triangle inequality is not guaranteed.
double mcd(const MultipathComponent &a, const MultipathComponent &b, const McdParams &params);

struct ClusterCentroid {
    double delay_ns = 0.0;
    std::array<double, 3> aod_dir{1.0, 0.0, 0.0};
    std::array<double, 3> aoa_dir{1.0, 0.0, 0.0};
};

double mcd_to_centroid(const MultipathComponent &p, const ClusterCentroid &c,
                       const McdParams &params);

struct ClusterPartition {
    std::vector<int> assignments;          // one cluster index per path
    std::vector<ClusterCentroid> centroids;
    std::vector<char> pruned;              // outliers are flagged, never deleted

    int k() const { return static_cast<int>(centroids.size()); }
    void validate(std::size_t n_paths) const;
};

/// Lloyd-style alternation under MCD: paths move to the nearest centroid,
/// centroids become power-weighted means (directions renormalized onto the
/// unit sphere). Runs to a fixed point or max_iterations. The weighted
/// objective sum(power * mcd^2) never increases across iterations; when
/// objective_trace is given it receives one objective value per iteration.
ClusterPartition kpowermeans(std::span<const MultipathComponent> paths, int k,
                             const McdParams &params, std::uint64_t seed,
                             int max_iterations = 100,
                             std::vector<double> *objective_trace = nullptr);

/// Weighted within-cluster objective of a partition.
double kpowermeans_objective(std::span<const MultipathComponent> paths,
                             const ClusterPartition &partition, const McdParams &params);

/// Variance-ratio validity score (higher is better). Defined for
/// 2 <= K <= L - 1; degenerate zero within-distance yields +infinity.
double ch_index(const ClusterPartition &partition,
                std::span<const MultipathComponent> paths, const McdParams &params);

/// Average worst pairwise overlap (lower is better). Defined for K >= 2;
/// coincident centroids yield +infinity.
double db_index(const ClusterPartition &partition,
                std::span<const MultipathComponent> paths, const McdParams &params);

/// Repeatedly merges the cluster pair whose centroid distance falls below
/// t times the pair's mean member-to-centroid distance.
ClusterPartition combine_validate(const ClusterPartition &partition,
                                  std::span<const MultipathComponent> paths,
                                  const McdParams &params, double t = 2.0);

/// Flags outliers per cluster: keeps the tightest member core holding at
/// least fraction p of the cluster power, and flags members beyond the
/// s-quantile of member-to-centroid distance. Centroids are recomputed
/// from the retained members.
ClusterPartition shape_pruning(const ClusterPartition &partition,
                               std::span<const MultipathComponent> paths,
                               const McdParams &params, double s = 0.9, double p = 0.9);

struct KScore {
    int k = 0;
    double objective = 0.0;
    double ch = 0.0;
    double db = 0.0;
};

struct OptimalKResult {
    ClusterPartition partition; // best-of-restarts partition at k_star
    int k_star = 0;
    std::vector<KScore> scores; // one row per evaluated K
};

/// Best-of-restarts clustering for each K in [k_min, k_max], then K chosen
/// by the variance-ratio score with the overlap score as tie-breaker.
/// Restart r of size K derives its seed from (seed, K, r), so results do
/// not depend on evaluation order or worker count.
OptimalKResult select_optimal_k(std::span<const MultipathComponent> paths, int k_min,
                                int k_max, const McdParams &params, int restarts = 50,
                                std::uint64_t seed = 0);

/// Per-cluster spread and shadowing statistics of a partition. Pruned paths
/// are excluded. Shadowing is the residual spread of cluster dB powers about
/// their fitted exponential decay versus excess delay.
struct ClusterStats {
    std::vector<int> subpath_counts;  // retained members per cluster
    std::vector<double> asd_deg;
    std::vector<double> asa_deg;
    std::vector<double> zsd_deg;
    std::vector<double> zsa_deg;
    double per_cluster_shadowing_db = 0.0;
    int num_clusters = 0;
};

ClusterStats cluster_statistics(const ClusterPartition &partition,
                                std::span<const MultipathComponent> paths);

} // namespace mmwchan

#endif
