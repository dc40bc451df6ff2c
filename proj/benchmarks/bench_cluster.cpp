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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mmwchan/kpowermeans.hpp"
#include "mmwchan/tcsl.hpp"
#include "mmwchan/units.hpp"

namespace {

std::vector<mmwchan::MultipathComponent> planted_paths(int clusters, int per_cluster) {
    std::mt19937_64 gen(777);
    std::normal_distribution<double> jitter(0.0, 2.0);
    std::uniform_real_distribution<double> power(0.5, 1.5);
    std::vector<mmwchan::MultipathComponent> paths;
    for (int c = 0; c < clusters; ++c) {
        for (int j = 0; j < per_cluster; ++j) {
            mmwchan::MultipathComponent p;
            p.delay_ns = std::max(0.0, 150.0 * c + jitter(gen));
            p.power_mw = power(gen);
            p.aoa_azimuth_deg = mmwchan::wrap_360(360.0 * c / clusters + jitter(gen));
            p.aod_azimuth_deg = mmwchan::wrap_360(77.0 * c + jitter(gen));
            paths.push_back(p);
        }
    }
    return paths;
}

void bm_kpowermeans(benchmark::State &state) {
    const auto paths = planted_paths(static_cast<int>(state.range(0)), 20);
    const auto params = mmwchan::McdParams::from_paths(paths);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            mmwchan::kpowermeans(paths, static_cast<int>(state.range(0)), params, 1));
}

void bm_select_optimal_k(benchmark::State &state) {
    const auto paths = planted_paths(4, 20);
    const auto params = mmwchan::McdParams::from_paths(paths);
    for (auto _ : state)
        benchmark::DoNotOptimize(mmwchan::select_optimal_k(
            paths, 2, 6, params, static_cast<int>(state.range(0)), 1));
}

void bm_partition_time_clusters(benchmark::State &state) {
    std::mt19937_64 gen(91);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    mmwchan::PowerDelayProfile pdp;
    pdp.bin_width_ns = 2.5;
    pdp.powers_mw.assign(static_cast<std::size_t>(state.range(0)), 0.0);
    for (auto &p : pdp.powers_mw)
        if (u(gen) < 0.3)
            p = u(gen) + 1e-9;
    pdp.powers_mw[0] = 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(mmwchan::partition_time_clusters(pdp));
}

} // namespace

BENCHMARK(bm_kpowermeans)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(bm_select_optimal_k)->Arg(10)->Arg(50);
BENCHMARK(bm_partition_time_clusters)->Arg(256)->Arg(4096);
