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

#include "mmwchan/lsp.hpp"

namespace {

std::pair<std::vector<double>, std::vector<double>> random_set(std::size_t n) {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> ang(0.0, 360.0);
    std::uniform_real_distribution<double> pow(0.05, 2.0);
    std::vector<double> a(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = ang(gen);
        p[i] = pow(gen);
    }
    return {a, p};
}

void bm_circular_spread(benchmark::State &state) {
    const auto [a, p] = random_set(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(mmwchan::circular_spread(a, p));
}

void bm_circular_spread_grid(benchmark::State &state) {
    const auto [a, p] = random_set(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(mmwchan::circular_spread_grid(a, p, 0.01));
}

} // namespace

BENCHMARK(bm_circular_spread)->Arg(8)->Arg(64)->Arg(512)->Arg(4096);
BENCHMARK(bm_circular_spread_grid)->Arg(8)->Arg(64)->Arg(512);
