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

#ifndef MMWCHAN_TESTS_APPROX_HPP
#define MMWCHAN_TESTS_APPROX_HPP

#include <cmath>
#include <ostream>

namespace testutil {

/// Absolute-margin comparison target for doctest assertions.
struct Near {
    double value;
    double margin;

    friend bool operator==(double lhs, const Near &rhs) {
        return std::fabs(lhs - rhs.value) <= rhs.margin;
    }
    friend bool operator==(const Near &lhs, double rhs) { return rhs == lhs; }
    friend bool operator!=(double lhs, const Near &rhs) { return !(lhs == rhs); }
    friend std::ostream &operator<<(std::ostream &os, const Near &n) {
        return os << n.value << " +/- " << n.margin;
    }
};

inline Near near(double value, double margin) { return Near{value, margin}; }

} // namespace testutil

#endif
