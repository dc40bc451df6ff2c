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

#ifndef MMWCHAN_RNG_HPP
#define MMWCHAN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace mmwchan {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed and an index.
/// Workers seeded this way produce output independent of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ (0x9e3779b97f4a7c15ULL + index));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(master, a), b);
}

/// Seeded random stream with explicit draw algorithms. The distributions
/// are implemented inline (not via <random> adaptors) so that the number
/// and order of engine consumptions is a fixed, documented contract.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    /// Uniform in [0, 1), 53-bit resolution, one engine draw.
    double uniform01() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller, two engine draws, no caching.
    double normal01() {
        double u1 = uniform01();
        double u2 = uniform01();
        // Guard log(0).
        if (u1 <= 0.0)
            u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal01(); }

    /// Exponential with the given mean, one engine draw.
    double exponential(double mean) {
        double u = uniform01();
        return -mean * std::log1p(-u);
    }

    /// Laplace (double exponential) with the given scale, one engine draw.
    /// Standard deviation is scale * sqrt(2).
    double laplace(double location, double scale) {
        double u = uniform01() - 0.5;
        double sign = u < 0.0 ? -1.0 : 1.0;
        return location - scale * sign * std::log1p(-2.0 * std::abs(u));
    }

    std::uint64_t raw() { return m_engine(); }

    std::mt19937_64 &engine() { return m_engine; }

  private:
    std::mt19937_64 m_engine;
};

} // namespace mmwchan

#endif
