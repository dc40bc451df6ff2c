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

#include "mmwchan/kpowermeans.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "mmwchan/errors.hpp"
#include "mmwchan/lsp.hpp"
#include "mmwchan/rng.hpp"
#include "mmwchan/tcsl.hpp"
#include "mmwchan/units.hpp"

namespace mmwchan {

namespace {

std::array<double, 3> direction_vector(double azimuth_deg, double elevation_deg) {
    const double az = deg_to_rad(azimuth_deg);
    const double el = deg_to_rad(elevation_deg);
    return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

double sq_dist3(const std::array<double, 3> &a, const std::array<double, 3> &b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
}

// Delay coordinate scaled so the MCD delay term is a plain difference.
double delay_coordinate(double delay_ns, const McdParams &p) {
    if (p.delay_spread_norm_ns <= 0.0)
        return 0.0;
    return p.delay_scaling_zeta * p.delay_std_ns /
           (p.delay_spread_norm_ns * p.delay_spread_norm_ns) * delay_ns;
}

struct EmbeddedPath {
    std::array<double, 3> aod;
    std::array<double, 3> aoa;
    double t; // scaled delay
    double w; // linear power
};

std::vector<EmbeddedPath> embed(std::span<const MultipathComponent> paths,
                                const McdParams &params) {
    std::vector<EmbeddedPath> out(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        out[i].aod = direction_vector(paths[i].aod_azimuth_deg, paths[i].aod_elevation_deg);
        out[i].aoa = direction_vector(paths[i].aoa_azimuth_deg, paths[i].aoa_elevation_deg);
        out[i].t = delay_coordinate(paths[i].delay_ns, params);
        out[i].w = paths[i].power_mw;
    }
    return out;
}

struct EmbeddedCentroid {
    std::array<double, 3> aod;
    std::array<double, 3> aoa;
    double t;
};

double sq_mcd(const EmbeddedPath &p, const EmbeddedCentroid &c) {
    const double dt = p.t - c.t;
    return 0.25 * sq_dist3(p.aod, c.aod) + 0.25 * sq_dist3(p.aoa, c.aoa) + dt * dt;
}

double sq_mcd_cc(const EmbeddedCentroid &a, const EmbeddedCentroid &b) {
    const double dt = a.t - b.t;
    return 0.25 * sq_dist3(a.aod, b.aod) + 0.25 * sq_dist3(a.aoa, b.aoa) + dt * dt;
}

// Power-weighted centroid of a member set. Mean directions renormalize onto
// the unit sphere; a vanishing mean falls back to the strongest member.
EmbeddedCentroid centroid_of(const std::vector<EmbeddedPath> &paths,
                             const std::vector<std::size_t> &members) {
    EmbeddedCentroid c{{0, 0, 0}, {0, 0, 0}, 0.0};
    double w = 0.0;
    std::size_t strongest = members.front();
    for (std::size_t i : members) {
        for (int d = 0; d < 3; ++d) {
            c.aod[d] += paths[i].w * paths[i].aod[d];
            c.aoa[d] += paths[i].w * paths[i].aoa[d];
        }
        c.t += paths[i].w * paths[i].t;
        w += paths[i].w;
        if (paths[i].w > paths[strongest].w)
            strongest = i;
    }
    c.t /= w;
    auto renorm = [&](std::array<double, 3> &v, const std::array<double, 3> &fallback) {
        const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (n < 1e-12) {
            v = fallback;
            return;
        }
        for (double &x : v)
            x /= n;
    };
    renorm(c.aod, paths[strongest].aod);
    renorm(c.aoa, paths[strongest].aoa);
    return c;
}

EmbeddedCentroid to_embedded(const ClusterCentroid &c, const McdParams &p) {
    return EmbeddedCentroid{c.aod_dir, c.aoa_dir, delay_coordinate(c.delay_ns, p)};
}

ClusterCentroid from_embedded(const EmbeddedCentroid &c, const McdParams &p) {
    ClusterCentroid out;
    out.aod_dir = c.aod;
    out.aoa_dir = c.aoa;
    const double scale = delay_coordinate(1.0, p);
    out.delay_ns = scale != 0.0 ? c.t / scale : 0.0;
    return out;
}

std::vector<std::vector<std::size_t>> members_by_cluster(const std::vector<int> &assignments,
                                                         int k) {
    std::vector<std::vector<std::size_t>> m(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < assignments.size(); ++i)
        m[static_cast<std::size_t>(assignments[i])].push_back(i);
    return m;
}

// Rebuilds a partition from assignments: relabels clusters contiguously in
// order of first appearance and recomputes centroids from retained members.
ClusterPartition rebuild(std::span<const MultipathComponent> paths,
                         const std::vector<EmbeddedPath> &emb, std::vector<int> assignments,
                         std::vector<char> pruned, const McdParams &params) {
    // Relabel contiguously in order of first appearance.
    std::vector<int> map;
    for (int a : assignments)
        if (a >= static_cast<int>(map.size()))
            map.resize(static_cast<std::size_t>(a) + 1, -1);
    int next = 0;
    for (int &a : assignments) {
        if (map[static_cast<std::size_t>(a)] < 0)
            map[static_cast<std::size_t>(a)] = next++;
        a = map[static_cast<std::size_t>(a)];
    }

    ClusterPartition out;
    out.assignments = std::move(assignments);
    out.pruned = std::move(pruned);
    auto members = members_by_cluster(out.assignments, next);
    out.centroids.resize(static_cast<std::size_t>(next));
    for (int c = 0; c < next; ++c) {
        std::vector<std::size_t> retained;
        for (std::size_t i : members[static_cast<std::size_t>(c)])
            if (!out.pruned[i])
                retained.push_back(i);
        const auto &use = retained.empty() ? members[static_cast<std::size_t>(c)] : retained;
        out.centroids[static_cast<std::size_t>(c)] = from_embedded(centroid_of(emb, use), params);
    }
    out.validate(paths.size());
    return out;
}

} // namespace

McdParams McdParams::from_paths(std::span<const MultipathComponent> paths, double zeta) {
    if (paths.empty())
        throw invalid_input("McdParams::from_paths: no paths");
    double lo = paths[0].delay_ns, hi = paths[0].delay_ns;
    double mean = 0.0;
    for (const auto &p : paths) {
        lo = std::min(lo, p.delay_ns);
        hi = std::max(hi, p.delay_ns);
        mean += p.delay_ns;
    }
    mean /= static_cast<double>(paths.size());
    double var = 0.0;
    for (const auto &p : paths)
        var += (p.delay_ns - mean) * (p.delay_ns - mean);
    var /= static_cast<double>(paths.size());

    McdParams out;
    out.delay_scaling_zeta = zeta;
    out.delay_spread_norm_ns = hi - lo > 0.0 ? hi - lo : 1.0;
    out.delay_std_ns = std::sqrt(var);
    out.validate();
    return out;
}

void McdParams::validate() const {
    if (!(delay_scaling_zeta >= 0.0))
        throw invalid_input("McdParams: zeta must be >= 0");
    if (!(delay_spread_norm_ns > 0.0))
        throw invalid_input("McdParams: delay normalization must be positive");
    if (!(delay_std_ns >= 0.0))
        throw invalid_input("McdParams: delay std must be >= 0");
}

double mcd(const MultipathComponent &a, const MultipathComponent &b, const McdParams &params) {
    params.validate();
    const auto aod_a = direction_vector(a.aod_azimuth_deg, a.aod_elevation_deg);
    const auto aod_b = direction_vector(b.aod_azimuth_deg, b.aod_elevation_deg);
    const auto aoa_a = direction_vector(a.aoa_azimuth_deg, a.aoa_elevation_deg);
    const auto aoa_b = direction_vector(b.aoa_azimuth_deg, b.aoa_elevation_deg);
    const double dt = delay_coordinate(a.delay_ns, params) - delay_coordinate(b.delay_ns, params);
    return std::sqrt(0.25 * sq_dist3(aod_a, aod_b) + 0.25 * sq_dist3(aoa_a, aoa_b) + dt * dt);
}

double mcd_to_centroid(const MultipathComponent &p, const ClusterCentroid &c,
                       const McdParams &params) {
    const auto aod = direction_vector(p.aod_azimuth_deg, p.aod_elevation_deg);
    const auto aoa = direction_vector(p.aoa_azimuth_deg, p.aoa_elevation_deg);
    const double dt = delay_coordinate(p.delay_ns, params) - delay_coordinate(c.delay_ns, params);
    return std::sqrt(0.25 * sq_dist3(aod, c.aod_dir) + 0.25 * sq_dist3(aoa, c.aoa_dir) +
                     dt * dt);
}

void ClusterPartition::validate(std::size_t n_paths) const {
    if (assignments.size() != n_paths || pruned.size() != n_paths)
        throw invalid_input("ClusterPartition: label vectors must match the path count");
    std::vector<char> seen(centroids.size(), 0);
    for (int a : assignments) {
        if (a < 0 || a >= k())
            throw invalid_input("ClusterPartition: assignment out of range");
        seen[static_cast<std::size_t>(a)] = 1;
    }
    for (char s : seen)
        if (!s)
            throw invalid_input("ClusterPartition: empty cluster");
}

ClusterPartition kpowermeans(std::span<const MultipathComponent> paths, int k,
                             const McdParams &params, std::uint64_t seed, int max_iterations,
                             std::vector<double> *objective_trace) {
    params.validate();
    const auto n = paths.size();
    if (k < 2 || static_cast<std::size_t>(k) > n)
        throw invalid_input("kpowermeans: need 2 <= K <= number of paths");

    const auto emb = embed(paths, params);

    // Initial centroids: power-weighted draws without replacement.
    Rng rng(seed);
    std::vector<char> taken(n, 0);
    std::vector<EmbeddedCentroid> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    double remaining = 0.0;
    for (const auto &e : emb)
        remaining += e.w;
    for (int c = 0; c < k; ++c) {
        double target = rng.uniform01() * remaining;
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (taken[i])
                continue;
            if (target < emb[i].w || pick == n) {
                pick = i;
                if (target < emb[i].w)
                    break;
            }
            target -= emb[i].w;
        }
        taken[pick] = 1;
        remaining -= emb[pick].w;
        centroids.push_back(EmbeddedCentroid{emb[pick].aod, emb[pick].aoa, emb[pick].t});
    }

    std::vector<int> assignments(n, -1);
    [[maybe_unused]] double prev_objective = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iterations; ++it) {
        // Assignment step.
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_mcd(emb[i], centroids[0]);
            for (int c = 1; c < k; ++c) {
                const double d = sq_mcd(emb[i], centroids[static_cast<std::size_t>(c)]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assignments[i] != best) {
                assignments[i] = best;
                changed = true;
            }
        }
        // Re-seed empty clusters at the worst-fitting path.
        auto members = members_by_cluster(assignments, k);
        for (int c = 0; c < k; ++c) {
            if (!members[static_cast<std::size_t>(c)].empty())
                continue;
            std::size_t worst = 0;
            double worst_cost = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (members[static_cast<std::size_t>(assignments[i])].size() <= 1)
                    continue;
                const double cost =
                    emb[i].w * sq_mcd(emb[i], centroids[static_cast<std::size_t>(assignments[i])]);
                if (cost > worst_cost) {
                    worst_cost = cost;
                    worst = i;
                }
            }
            auto &old_members = members[static_cast<std::size_t>(assignments[worst])];
            old_members.erase(std::find(old_members.begin(), old_members.end(), worst));
            assignments[worst] = c;
            members[static_cast<std::size_t>(c)].push_back(worst);
            centroids[static_cast<std::size_t>(c)] =
                EmbeddedCentroid{emb[worst].aod, emb[worst].aoa, emb[worst].t};
            changed = true;
        }
        // Update step.
        for (int c = 0; c < k; ++c)
            centroids[static_cast<std::size_t>(c)] =
                centroid_of(emb, members[static_cast<std::size_t>(c)]);

        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            objective +=
                emb[i].w * sq_mcd(emb[i], centroids[static_cast<std::size_t>(assignments[i])]);
        assert(objective <= prev_objective * (1.0 + 1e-9) + 1e-12);
        if (objective_trace)
            objective_trace->push_back(objective);
        if (!changed)
            break;
        prev_objective = objective;
    }

    ClusterPartition out;
    out.assignments = std::move(assignments);
    out.pruned.assign(n, 0);
    out.centroids.resize(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c)
        out.centroids[static_cast<std::size_t>(c)] =
            from_embedded(centroids[static_cast<std::size_t>(c)], params);
    out.validate(n);
    return out;
}

double kpowermeans_objective(std::span<const MultipathComponent> paths,
                             const ClusterPartition &partition, const McdParams &params) {
    partition.validate(paths.size());
    double obj = 0.0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const double d = mcd_to_centroid(
            paths[i], partition.centroids[static_cast<std::size_t>(partition.assignments[i])],
            params);
        obj += paths[i].power_mw * d * d;
    }
    return obj;
}

double ch_index(const ClusterPartition &partition, std::span<const MultipathComponent> paths,
                const McdParams &params) {
    partition.validate(paths.size());
    const auto l = static_cast<int>(paths.size());
    const int k = partition.k();
    if (k < 2)
        throw undefined_index("ch_index: undefined numerator for K < 2");
    if (k >= l)
        throw undefined_index("ch_index: undefined denominator for K >= number of paths");

    const auto emb = embed(paths, params);
    std::vector<std::size_t> all(paths.size());
    std::iota(all.begin(), all.end(), 0);
    const EmbeddedCentroid global = centroid_of(emb, all);

    double tr_b = 0.0, tr_w = 0.0;
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int a : partition.assignments)
        ++sizes[static_cast<std::size_t>(a)];
    for (int c = 0; c < k; ++c) {
        const auto ec = to_embedded(partition.centroids[static_cast<std::size_t>(c)], params);
        tr_b += static_cast<double>(sizes[static_cast<std::size_t>(c)]) * sq_mcd_cc(ec, global);
    }
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto ec = to_embedded(
            partition.centroids[static_cast<std::size_t>(partition.assignments[i])], params);
        tr_w += sq_mcd(emb[i], ec);
    }
    if (tr_w <= 0.0)
        return std::numeric_limits<double>::infinity(); // perfectly tight clusters
    return (tr_b / static_cast<double>(k - 1)) / (tr_w / static_cast<double>(l - k));
}

double db_index(const ClusterPartition &partition, std::span<const MultipathComponent> paths,
                const McdParams &params) {
    partition.validate(paths.size());
    const int k = partition.k();
    if (k < 2)
        throw undefined_index("db_index: undefined for K < 2");

    const auto emb = embed(paths, params);
    std::vector<double> scatter(static_cast<std::size_t>(k), 0.0);
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const int c = partition.assignments[i];
        const auto ec = to_embedded(partition.centroids[static_cast<std::size_t>(c)], params);
        scatter[static_cast<std::size_t>(c)] += std::sqrt(sq_mcd(emb[i], ec));
        ++sizes[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < k; ++c)
        scatter[static_cast<std::size_t>(c)] /= static_cast<double>(sizes[static_cast<std::size_t>(c)]);

    double acc = 0.0;
    for (int a = 0; a < k; ++a) {
        double worst = 0.0;
        for (int b = 0; b < k; ++b) {
            if (a == b)
                continue;
            const double m = std::sqrt(sq_mcd_cc(
                to_embedded(partition.centroids[static_cast<std::size_t>(a)], params),
                to_embedded(partition.centroids[static_cast<std::size_t>(b)], params)));
            const double s =
                scatter[static_cast<std::size_t>(a)] + scatter[static_cast<std::size_t>(b)];
            if (m <= 0.0)
                return std::numeric_limits<double>::infinity(); // coincident centroids
            worst = std::max(worst, s / m);
        }
        acc += worst;
    }
    return acc / static_cast<double>(k);
}

ClusterPartition combine_validate(const ClusterPartition &partition,
                                  std::span<const MultipathComponent> paths,
                                  const McdParams &params, double t) {
    partition.validate(paths.size());
    if (!(t >= 0.0))
        throw invalid_input("combine_validate: t must be >= 0");
    const auto emb = embed(paths, params);

    std::vector<int> assignments = partition.assignments;
    std::vector<char> pruned = partition.pruned;

    while (true) {
        const int k = 1 + *std::max_element(assignments.begin(), assignments.end());
        if (k < 2)
            break;
        auto members = members_by_cluster(assignments, k);
        std::vector<EmbeddedCentroid> cents(static_cast<std::size_t>(k));
        std::vector<double> intra_sum(static_cast<std::size_t>(k), 0.0);
        for (int c = 0; c < k; ++c) {
            cents[static_cast<std::size_t>(c)] = centroid_of(emb, members[static_cast<std::size_t>(c)]);
            for (std::size_t i : members[static_cast<std::size_t>(c)])
                intra_sum[static_cast<std::size_t>(c)] +=
                    std::sqrt(sq_mcd(emb[i], cents[static_cast<std::size_t>(c)]));
        }

        int merge_a = -1, merge_b = -1;
        double best_margin = 0.0;
        for (int a = 0; a < k; ++a) {
            for (int b = a + 1; b < k; ++b) {
                const double cd = std::sqrt(sq_mcd_cc(cents[static_cast<std::size_t>(a)],
                                                      cents[static_cast<std::size_t>(b)]));
                const double pair_mean =
                    (intra_sum[static_cast<std::size_t>(a)] + intra_sum[static_cast<std::size_t>(b)]) /
                    static_cast<double>(members[static_cast<std::size_t>(a)].size() +
                                        members[static_cast<std::size_t>(b)].size());
                const double margin = cd - t * pair_mean;
                if (margin <= 0.0 && (merge_a < 0 || margin < best_margin)) {
                    best_margin = margin;
                    merge_a = a;
                    merge_b = b;
                }
            }
        }
        if (merge_a < 0)
            break;
        for (int &a : assignments) {
            if (a == merge_b)
                a = merge_a;
            else if (a > merge_b)
                --a; // keep labels contiguous for the next pass
        }
    }
    return rebuild(paths, emb, std::move(assignments), std::move(pruned), params);
}

ClusterPartition shape_pruning(const ClusterPartition &partition,
                               std::span<const MultipathComponent> paths,
                               const McdParams &params, double s, double p) {
    partition.validate(paths.size());
    if (!(s > 0.0 && s <= 1.0) || !(p > 0.0 && p <= 1.0))
        throw invalid_input("shape_pruning: s and p must lie in (0, 1]");
    const auto emb = embed(paths, params);

    std::vector<char> pruned = partition.pruned;
    const int k = partition.k();
    auto members = members_by_cluster(partition.assignments, k);

    for (int c = 0; c < k; ++c) {
        std::vector<std::size_t> active;
        for (std::size_t i : members[static_cast<std::size_t>(c)])
            if (!pruned[i])
                active.push_back(i);
        if (active.size() < 2)
            continue;
        const auto cent = centroid_of(emb, active);
        std::vector<double> dist(active.size());
        double total = 0.0;
        for (std::size_t j = 0; j < active.size(); ++j) {
            dist[j] = std::sqrt(sq_mcd(emb[active[j]], cent));
            total += emb[active[j]].w;
        }
        std::vector<std::size_t> order(active.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (dist[a] != dist[b])
                return dist[a] < dist[b];
            return active[a] < active[b];
        });
        // Tightest core holding at least fraction p of the cluster power.
        const double need = p * total * (1.0 - 1e-12);
        std::vector<char> in_core(active.size(), 0);
        double acc = 0.0;
        for (std::size_t j : order) {
            if (acc >= need)
                break;
            in_core[j] = 1;
            acc += emb[active[j]].w;
        }
        // Distance cut at the s-quantile (nearest rank).
        const auto rank = static_cast<std::size_t>(
            std::max<long>(0, std::lround(std::ceil(s * static_cast<double>(active.size()))) - 1));
        const double cut = dist[order[std::min(rank, active.size() - 1)]];
        for (std::size_t j = 0; j < active.size(); ++j)
            if (!in_core[j] || dist[j] > cut * (1.0 + 1e-12))
                pruned[active[j]] = 1;
    }
    return rebuild(paths, emb, partition.assignments, std::move(pruned), params);
}

OptimalKResult select_optimal_k(std::span<const MultipathComponent> paths, int k_min, int k_max,
                                const McdParams &params, int restarts, std::uint64_t seed) {
    const auto l = static_cast<int>(paths.size());
    if (k_min < 2 || k_min > k_max || k_max > l - 1)
        throw invalid_input("select_optimal_k: feasible K range is [2, L-1]; K = 1 is excluded "
                            "because the variance-ratio score has an undefined numerator there");
    if (restarts < 1)
        throw invalid_input("select_optimal_k: need at least one restart");

    OptimalKResult result;
    double best_ch = -std::numeric_limits<double>::infinity();
    double best_db = std::numeric_limits<double>::infinity();

    for (int k = k_min; k <= k_max; ++k) {
        ClusterPartition best_part;
        double best_obj = std::numeric_limits<double>::infinity();
        for (int r = 0; r < restarts; ++r) {
            auto part = kpowermeans(paths, k, params,
                                    derive_seed(seed, static_cast<std::uint64_t>(k),
                                                static_cast<std::uint64_t>(r)));
            const double obj = kpowermeans_objective(paths, part, params);
            if (obj < best_obj) {
                best_obj = obj;
                best_part = std::move(part);
            }
        }
        const double ch = ch_index(best_part, paths, params);
        const double db = db_index(best_part, paths, params);
        result.scores.push_back(KScore{k, best_obj, ch, db});
        const bool better = ch > best_ch || (ch == best_ch && db < best_db);
        if (better) {
            best_ch = ch;
            best_db = db;
            result.k_star = k;
            result.partition = std::move(best_part);
        }
    }
    return result;
}

ClusterStats cluster_statistics(const ClusterPartition &partition,
                                std::span<const MultipathComponent> paths) {
    partition.validate(paths.size());
    const int k = partition.k();
    auto members = members_by_cluster(partition.assignments, k);

    ClusterStats stats;
    stats.num_clusters = k;
    std::vector<double> cluster_delay, cluster_power;
    double first_arrival = std::numeric_limits<double>::infinity();
    for (const auto &p : paths)
        first_arrival = std::min(first_arrival, p.delay_ns);

    for (int c = 0; c < k; ++c) {
        std::vector<double> aod_az, aoa_az, aod_el, aoa_el, w;
        double power = 0.0;
        double start = std::numeric_limits<double>::infinity();
        int count = 0;
        for (std::size_t i : members[static_cast<std::size_t>(c)]) {
            if (partition.pruned[i])
                continue;
            const auto &p = paths[i];
            aod_az.push_back(p.aod_azimuth_deg);
            aoa_az.push_back(p.aoa_azimuth_deg);
            aod_el.push_back(p.aod_elevation_deg);
            aoa_el.push_back(p.aoa_elevation_deg);
            w.push_back(p.power_mw);
            power += p.power_mw;
            start = std::min(start, p.delay_ns);
            ++count;
        }
        stats.subpath_counts.push_back(count);
        if (count == 0) {
            stats.asd_deg.push_back(0.0);
            stats.asa_deg.push_back(0.0);
            stats.zsd_deg.push_back(0.0);
            stats.zsa_deg.push_back(0.0);
            continue;
        }
        stats.asd_deg.push_back(circular_spread(aod_az, w));
        stats.asa_deg.push_back(circular_spread(aoa_az, w));
        stats.zsd_deg.push_back(zenith_spread(aod_el, w));
        stats.zsa_deg.push_back(zenith_spread(aoa_el, w));
        cluster_delay.push_back(start - first_arrival);
        cluster_power.push_back(power);
    }

    PooledDecayFit fit;
    fit.add_group(cluster_delay, cluster_power);
    stats.per_cluster_shadowing_db = fit.valid() ? fit.residual_std_db() : 0.0;
    return stats;
}

} // namespace mmwchan
