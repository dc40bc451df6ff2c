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

#include "mmwchan/generator.hpp"
#include "mmwchan/tcsl.hpp"
#include "mmwchan/validate.hpp"

namespace {

mmwchan::GeneratorConfig nlos28_config() {
    mmwchan::ScenarioParameters sc;
    sc.frequency_ghz = 28.0;
    sc.los_condition = mmwchan::LosCondition::nlos;
    sc.num_clusters_mu = 2.1;
    sc.num_clusters_sigma = 1.4;
    sc.num_subpaths_mu = 9.1;
    sc.num_subpaths_sigma = 10.9;
    sc.cluster_decay_gamma_ns = 49.4;
    sc.subpath_decay_gamma_ns = 16.9;
    sc.per_cluster_shadowing_db = 3.0;
    sc.per_subpath_shadowing_db = 6.0;
    sc.num_aod_lobes_mu = 1.6;
    sc.num_aod_lobes_sigma = 1.8;
    sc.num_aoa_lobes_mu = 1.6;
    sc.num_aoa_lobes_sigma = 0.7;
    sc.rms_lobe_asd_mu_deg = 6.2;
    sc.rms_lobe_asd_sigma_deg = 3.3;
    sc.rms_lobe_asa_mu_deg = 6.8;
    sc.rms_lobe_asa_sigma_deg = 4.8;
    sc.rms_lobe_esa_mu_deg = 6.7;
    sc.rms_lobe_esa_sigma_deg = 2.3;
    sc.xpr_mu_db = 16.7;
    sc.xpr_sigma_db = 8.8;
    mmwchan::GeneratorConfig cfg;
    cfg.scenario = sc;
    return cfg;
}

void bm_generate_ensemble(benchmark::State &state) {
    const auto cfg = nlos28_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            mmwchan::generate_ensemble(cfg, static_cast<std::size_t>(state.range(0))));
}

void bm_closed_loop(benchmark::State &state) {
    const auto cfg = nlos28_config();
    const auto ensemble =
        mmwchan::generate_ensemble(cfg, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(mmwchan::tcsl_summary(ensemble));
}

} // namespace

BENCHMARK(bm_generate_ensemble)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_closed_loop)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
