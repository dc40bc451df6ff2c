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

#ifndef MMWCHAN_UNITS_HPP
#define MMWCHAN_UNITS_HPP

#include <cmath>
#include <numbers>

namespace mmwchan {

// All internal power arithmetic happens in linear mW; dB only at I/O
// boundaries. Angles are degrees in the public API, radians inside trig.

inline double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

inline double linear_to_db(double x_linear) { return 10.0 * std::log10(x_linear); }

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle into [0, 360).
inline double wrap_360(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0)
        w += 360.0;
    return w == 360.0 ? 0.0 : w;
}

/// Minimal signed angular difference a - b, in (-180, 180].
/// The 180-degree tie resolves to the positive branch.
inline double circular_difference(double a_deg, double b_deg) {
    double d = std::fmod(a_deg - b_deg, 360.0);
    if (d <= -180.0)
        d += 360.0;
    else if (d > 180.0)
        d -= 360.0;
    return d;
}

} // namespace mmwchan

#endif
