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

#include <doctest.h>

#include "support/approx.hpp"

#include <random>
#include <vector>

#include "mmwchan/errors.hpp"
#include "mmwchan/kpowermeans.hpp"
#include "mmwchan/units.hpp"
#include "support/oracles.hpp"

using namespace mmwchan;

namespace {

struct Planted {
    std::vector<MultipathComponent> paths;
    std::vector<int> labels;
};

// Well-separated groups in delay and both angle domains.
Planted plant_clusters(int k, int per_cluster, double intra_delay_ns, double intra_angle_deg,
                       std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> jitter(0.0, 1.0);
    std::uniform_real_distribution<double> power(0.5, 1.5);
    Planted out;
    for (int c = 0; c < k; ++c) {
        const double delay = 100.0 + 250.0 * c;
        const double az = wrap_360(20.0 + 360.0 * c / static_cast<double>(k));
        const double el = -20.0 + 40.0 * c / static_cast<double>(std::max(1, k - 1));
        for (int j = 0; j < per_cluster; ++j) {
            MultipathComponent p;
            p.delay_ns = std::max(0.0, delay + intra_delay_ns * jitter(gen));
            p.power_mw = power(gen);
            p.aoa_azimuth_deg = wrap_360(az + intra_angle_deg * jitter(gen));
            p.aod_azimuth_deg = wrap_360(az + 120.0 + intra_angle_deg * jitter(gen));
            p.aoa_elevation_deg = std::clamp(el + intra_angle_deg * jitter(gen), -90.0, 90.0);
            p.aod_elevation_deg = std::clamp(-el + intra_angle_deg * jitter(gen), -90.0, 90.0);
            out.paths.push_back(p);
            out.labels.push_back(c);
        }
    }
    return out;
}

} // namespace

TEST_CASE("mcd premetric properties") {
    std::mt19937_64 gen(67);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    McdParams params;
    params.delay_spread_norm_ns = 100.0;
    params.delay_std_ns = 30.0;

    MultipathComponent a;
    a.power_mw = 1.0;
    CHECK(mcd(a, a, params) == 0.0);

    for (int t = 0; t < 200; ++t) {
        MultipathComponent x, y;
        x.power_mw = y.power_mw = 1.0;
        x.delay_ns = 300.0 * u(gen);
        y.delay_ns = 300.0 * u(gen);
        x.aoa_azimuth_deg = 360.0 * u(gen);
        y.aoa_azimuth_deg = 360.0 * u(gen);
        x.aod_azimuth_deg = 360.0 * u(gen);
        y.aod_azimuth_deg = 360.0 * u(gen);
        x.aoa_elevation_deg = 180.0 * u(gen) - 90.0;
        y.aoa_elevation_deg = 180.0 * u(gen) - 90.0;
        const double dxy = mcd(x, y, params);
        CHECK(dxy >= 0.0);
        CHECK(dxy == testutil::near(mcd(y, x, params), 1e-15));
    }
}

TEST_CASE("mcd delay term follows the adopted normalization") {
    // Two paths differing only by 50 ns. With the delay range as
    // normalization and the two-point delay deviation of 25 ns:
    // zeta * (50 / 50) * (25 / 50) = 0.5.
    MultipathComponent a, b;
    a.power_mw = b.power_mw = 1.0;
    b.delay_ns = 50.0;
    const McdParams params = McdParams::from_paths(std::vector{a, b}, 1.0);
    CHECK(params.delay_spread_norm_ns == doctest::Approx(50.0));
    CHECK(params.delay_std_ns == doctest::Approx(25.0));
    CHECK(mcd(a, b, params) == testutil::near(0.5, 1e-12));
}

TEST_CASE("kpowermeans with K equal to the path count isolates every path") {
    const Planted plant = plant_clusters(6, 1, 0.0, 0.0, 71);
    const McdParams params = McdParams::from_paths(plant.paths);
    const auto part = kpowermeans(plant.paths, 6, params, 1);
    CHECK(kpowermeans_objective(plant.paths, part, params) <= 1e-18);
}

TEST_CASE("kpowermeans recovers planted separation") {
    const Planted plant = plant_clusters(2, 20, 3.0, 2.0, 73);
    const McdParams params = McdParams::from_paths(plant.paths);
    const auto part = kpowermeans(plant.paths, 2, params, 5);
    CHECK(oracles::adjusted_rand_index(part.assignments, plant.labels) ==
          doctest::Approx(1.0));
}

TEST_CASE("kpowermeans input validation") {
    const Planted plant = plant_clusters(2, 3, 1.0, 1.0, 79);
    const McdParams params = McdParams::from_paths(plant.paths);
    CHECK_THROWS_AS(kpowermeans(plant.paths, 1, params, 1), invalid_input);
    CHECK_THROWS_AS(kpowermeans(plant.paths, 7, params, 1), invalid_input);
}

TEST_CASE("validity scores prefer the planted cluster count") {
    const Planted plant = plant_clusters(2, 15, 3.0, 2.0, 83);
    const McdParams params = McdParams::from_paths(plant.paths);
    const auto at = [&](int k) { return kpowermeans(plant.paths, k, params, 11); };
    const double ch2 = ch_index(at(2), plant.paths, params);
    const double ch3 = ch_index(at(3), plant.paths, params);
    const double ch4 = ch_index(at(4), plant.paths, params);
    CHECK(ch2 > ch3);
    CHECK(ch2 > ch4);
    const double db2 = db_index(at(2), plant.paths, params);
    const double db3 = db_index(at(3), plant.paths, params);
    CHECK(db2 < db3);
}

TEST_CASE("validity scores: undefined configurations throw") {
    const Planted plant = plant_clusters(2, 5, 1.0, 1.0, 89);
    const McdParams params = McdParams::from_paths(plant.paths);

    ClusterPartition k1;
    k1.assignments.assign(plant.paths.size(), 0);
    k1.pruned.assign(plant.paths.size(), 0);
    k1.centroids.resize(1);
    CHECK_THROWS_AS(ch_index(k1, plant.paths, params), undefined_index);
    CHECK_THROWS_AS(db_index(k1, plant.paths, params), undefined_index);

    // K equal to the path count: zero denominator.
    const auto all = kpowermeans(plant.paths, 10, params, 1);
    CHECK_THROWS_AS(ch_index(all, plant.paths, params), undefined_index);
}

TEST_CASE("validity scores: degenerate geometry flags infinity") {
    // Identical paths split across two clusters: zero within-distance.
    std::vector<MultipathComponent> paths(6);
    for (auto &p : paths)
        p.power_mw = 1.0;
    McdParams params;
    ClusterPartition part;
    part.assignments = {0, 0, 0, 1, 1, 1};
    part.pruned.assign(6, 0);
    part.centroids.resize(2);
    CHECK(std::isinf(ch_index(part, paths, params)));
    CHECK(std::isinf(db_index(part, paths, params)));
}

TEST_CASE("validity scores are invariant under uniform power scaling") {
    const Planted plant = plant_clusters(3, 10, 3.0, 2.0, 97);
    const McdParams params = McdParams::from_paths(plant.paths);
    const auto part = kpowermeans(plant.paths, 3, params, 3);
    const double ch = ch_index(part, plant.paths, params);
    const double db = db_index(part, plant.paths, params);

    std::vector<MultipathComponent> scaled = plant.paths;
    for (auto &p : scaled)
        p.power_mw *= 77.0;
    CHECK(ch_index(part, scaled, params) == doctest::Approx(ch).epsilon(1e-12));
    CHECK(db_index(part, scaled, params) == doctest::Approx(db).epsilon(1e-12));
}

TEST_CASE("combine_validate merges coincident groups and keeps separated ones") {
    // Two plantings on top of each other plus one far away.
    Planted near = plant_clusters(1, 12, 2.0, 1.5, 101);
    Planted dup = plant_clusters(1, 12, 2.0, 1.5, 103);
    Planted far = plant_clusters(1, 12, 2.0, 1.5, 107);
    for (auto &p : far.paths) {
        p.delay_ns += 600.0;
        p.aoa_azimuth_deg = wrap_360(p.aoa_azimuth_deg + 180.0);
    }
    std::vector<MultipathComponent> paths = near.paths;
    paths.insert(paths.end(), dup.paths.begin(), dup.paths.end());
    paths.insert(paths.end(), far.paths.begin(), far.paths.end());
    const McdParams params = McdParams::from_paths(paths);

    ClusterPartition part;
    part.assignments.assign(paths.size(), 0);
    for (std::size_t i = 12; i < 24; ++i)
        part.assignments[i] = 1;
    for (std::size_t i = 24; i < 36; ++i)
        part.assignments[i] = 2;
    part.pruned.assign(paths.size(), 0);
    part.centroids.resize(3);

    const auto merged = combine_validate(part, paths, params);
    CHECK(merged.k() == 2);

    // Already-separated clusters stay untouched.
    const auto stable = combine_validate(merged, paths, params);
    CHECK(stable.k() == 2);

    // A single cluster passes through unchanged.
    ClusterPartition one;
    one.assignments.assign(paths.size(), 0);
    one.pruned.assign(paths.size(), 0);
    one.centroids.resize(1);
    CHECK(combine_validate(one, paths, params).k() == 1);
}

TEST_CASE("shape_pruning flags a weak far outlier and nothing else at unit settings") {
    Planted plant = plant_clusters(1, 20, 2.0, 1.5, 109);
    // Append one weak outlier far from the group.
    MultipathComponent outlier = plant.paths[0];
    outlier.delay_ns += 400.0;
    outlier.power_mw = 0.05;
    plant.paths.push_back(outlier);
    const McdParams params = McdParams::from_paths(plant.paths);

    ClusterPartition part;
    part.assignments.assign(plant.paths.size(), 0);
    part.pruned.assign(plant.paths.size(), 0);
    part.centroids.resize(1);

    const auto pruned = shape_pruning(part, plant.paths, params);
    CHECK(pruned.pruned.back() == 1);

    // Identity settings leave everything in place.
    const auto untouched = shape_pruning(part, plant.paths, params, 1.0, 1.0);
    for (char f : untouched.pruned)
        CHECK(f == 0);
}

TEST_CASE("shape_pruning on a uniform cluster flags at most the power complement") {
    // Equal powers spread evenly: the flagged fraction stays within 1 - p.
    std::vector<MultipathComponent> paths;
    for (int i = 0; i < 40; ++i) {
        MultipathComponent p;
        p.power_mw = 1.0;
        p.delay_ns = 100.0;
        p.aoa_azimuth_deg = wrap_360(i * 9.0 / 40.0 + 10.0);
        paths.push_back(p);
    }
    const McdParams params = McdParams::from_paths(paths);
    ClusterPartition part;
    part.assignments.assign(paths.size(), 0);
    part.pruned.assign(paths.size(), 0);
    part.centroids.resize(1);

    const auto pruned = shape_pruning(part, paths, params, 0.9, 0.9);
    double flagged_power = 0.0, total = 0.0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        total += paths[i].power_mw;
        if (pruned.pruned[i])
            flagged_power += paths[i].power_mw;
    }
    CHECK(flagged_power <= 0.1 * total + 1e-12);
}

TEST_CASE("select_optimal_k finds the planted count and is reproducible") {
    const Planted plant = plant_clusters(3, 14, 3.0, 2.0, 113);
    const McdParams params = McdParams::from_paths(plant.paths);
    const auto result = select_optimal_k(plant.paths, 2, 6, params, 10, 42);
    CHECK(result.k_star == 3);
    CHECK(oracles::adjusted_rand_index(result.partition.assignments, plant.labels) >= 0.99);
    CHECK(result.scores.size() == 5);

    const auto again = select_optimal_k(plant.paths, 2, 6, params, 10, 42);
    CHECK(again.k_star == result.k_star);
    CHECK(again.partition.assignments == result.partition.assignments);
    for (std::size_t i = 0; i < result.scores.size(); ++i) {
        CHECK(again.scores[i].objective == result.scores[i].objective);
        CHECK(again.scores[i].ch == result.scores[i].ch);
    }
}

TEST_CASE("select_optimal_k rejects an infeasible range") {
    const Planted plant = plant_clusters(2, 5, 1.0, 1.0, 127);
    const McdParams params = McdParams::from_paths(plant.paths);
    CHECK_THROWS_AS(select_optimal_k(plant.paths, 1, 5, params, 5, 1), invalid_input);
    CHECK_THROWS_AS(select_optimal_k(plant.paths, 2, 10, params, 5, 1), invalid_input);
}

TEST_CASE("cluster_statistics spreads and counts") {
    // One path per cluster: all spreads vanish.
    {
        const Planted plant = plant_clusters(4, 1, 0.0, 0.0, 131);
        const McdParams params = McdParams::from_paths(plant.paths);
        const auto part = kpowermeans(plant.paths, 4, params, 1);
        const auto stats = cluster_statistics(part, plant.paths);
        CHECK(stats.num_clusters == 4);
        for (double s : stats.asa_deg)
            CHECK(s == 0.0);
        for (double s : stats.zsd_deg)
            CHECK(s == 0.0);
    }
    // Planted intra-cluster angular spread is recovered on average.
    {
        std::mt19937_64 gen(137);
        std::normal_distribution<double> n(0.0, 3.0);
        std::vector<MultipathComponent> paths;
        std::vector<int> labels;
        for (int c = 0; c < 2; ++c) {
            for (int j = 0; j < 2000; ++j) {
                MultipathComponent p;
                p.power_mw = 1.0;
                p.delay_ns = 100.0 + 300.0 * c;
                p.aod_azimuth_deg = wrap_360(60.0 + 180.0 * c + n(gen));
                p.aoa_azimuth_deg = wrap_360(200.0 + 140.0 * c + n(gen));
                paths.push_back(p);
                labels.push_back(c);
            }
        }
        ClusterPartition part;
        part.assignments = labels;
        part.pruned.assign(paths.size(), 0);
        part.centroids.resize(2);
        const auto stats = cluster_statistics(part, paths);
        for (double s : stats.asd_deg)
            CHECK(s == testutil::near(3.0, 0.2));
        for (double s : stats.asa_deg)
            CHECK(s == testutil::near(3.0, 0.2));
    }
}

TEST_CASE("kpowermeans objective trace is non-increasing on random data") {
    std::mt19937_64 gen(139);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<MultipathComponent> paths(40);
        for (auto &p : paths) {
            p.power_mw = 0.1 + u(gen);
            p.delay_ns = 500.0 * u(gen);
            p.aoa_azimuth_deg = 360.0 * u(gen);
            p.aod_azimuth_deg = 360.0 * u(gen);
            p.aoa_elevation_deg = 60.0 * u(gen) - 30.0;
            p.aod_elevation_deg = 60.0 * u(gen) - 30.0;
        }
        const McdParams params = McdParams::from_paths(paths);
        std::vector<double> trace;
        (void)kpowermeans(paths, 4, params, 1000 + trial, 100, &trace);
        REQUIRE(!trace.empty());
        for (std::size_t i = 1; i < trace.size(); ++i)
            CHECK(trace[i] <= trace[i - 1] * (1.0 + 1e-12) + 1e-15);
    }
}

TEST_CASE("select_optimal_k on realistically spread plantings stays near the truth") {
    // Five clusters with intra-cluster spreads in the magnitude range of
    // measured cluster statistics (a few degrees, tens of ns).
    std::mt19937_64 gen(149);
    std::normal_distribution<double> n01(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<MultipathComponent> paths;
    std::vector<int> labels;
    const int k_true = 5;
    for (int c = 0; c < k_true; ++c) {
        const double delay = 80.0 + 180.0 * c;
        const double aoa = wrap_360(72.0 * c + 15.0);
        const double aod = wrap_360(72.0 * c + 200.0);
        for (int j = 0; j < 16; ++j) {
            MultipathComponent p;
            p.delay_ns = std::max(0.0, delay + 12.0 * n01(gen));
            p.power_mw = 0.2 + u(gen);
            p.aoa_azimuth_deg = wrap_360(aoa + 9.6 * n01(gen));
            p.aod_azimuth_deg = wrap_360(aod + 3.0 * n01(gen));
            p.aoa_elevation_deg = std::clamp(1.6 * n01(gen), -90.0, 90.0);
            p.aod_elevation_deg = std::clamp(0.8 * n01(gen), -90.0, 90.0);
            paths.push_back(p);
            labels.push_back(c);
        }
    }
    const McdParams params = McdParams::from_paths(paths);
    const auto result = select_optimal_k(paths, 2, 8, params, 50, 77);
    CHECK(result.k_star >= 4);
    CHECK(result.k_star <= 6);
    CHECK(oracles::adjusted_rand_index(result.partition.assignments, labels) >= 0.9);
}
