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

#include "mmwchan/lsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "mmwchan/errors.hpp"
#include "mmwchan/units.hpp"

namespace mmwchan {

namespace {

constexpr double k_two_pi = 2.0 * std::numbers::pi;

void check_angle_power_input(std::span<const double> angles, std::span<const double> powers) {
    if (angles.empty() || angles.size() != powers.size())
        throw invalid_input("spread: angle and power sequences must have the same non-zero size");
    bool any_positive = false;
    for (double p : powers) {
        if (!(std::isfinite(p) && p >= 0.0))
            throw invalid_input("spread: powers must be finite and >= 0");
        any_positive |= p > 0.0;
    }
    if (!any_positive)
        throw invalid_input("spread: all powers are zero");
}

struct SortedAngles {
    std::vector<double> theta;  // radians, ascending, in [0, 2*pi)
    std::vector<double> weight; // linear power, aligned with theta
    double wsum = 0.0;
};

SortedAngles sort_by_angle(std::span<const double> angles_deg, std::span<const double> powers) {
    const std::size_t n = angles_deg.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> theta(n);
    for (std::size_t i = 0; i < n; ++i)
        theta[i] = deg_to_rad(wrap_360(angles_deg[i]));
    std::sort(order.begin(), order.end(),
              [&theta](std::size_t a, std::size_t b) { return theta[a] < theta[b]; });
    SortedAngles out;
    out.theta.resize(n);
    out.weight.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.theta[i] = theta[order[i]];
        out.weight[i] = powers[order[i]];
        out.wsum += powers[order[i]];
    }
    return out;
}

// Weighted variance of the configuration where angles at index >= k are
// unwrapped downwards by one turn. Two-pass evaluation.
double suffix_variance(const SortedAngles &s, std::size_t k) {
    const std::size_t n = s.theta.size();
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        mean += s.weight[j] * (s.theta[j] - (j >= k ? k_two_pi : 0.0));
    mean /= s.wsum;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = s.theta[j] - (j >= k ? k_two_pi : 0.0) - mean;
        acc += s.weight[j] * d * d;
    }
    return acc / s.wsum;
}

// The spread objective is piecewise constant in the rotation offset: within
// an interval between two wrap positions every sample shifts by the same
// amount, leaving the variance unchanged. The achievable wrap sets are the
// suffixes of the angle-sorted samples, so the exact minimum is the best
// suffix configuration.
double min_variance_exact(const SortedAngles &s) {
    const std::size_t n = s.theta.size();
    if (n == 1 || s.theta.front() == s.theta.back())
        return 0.0;

    double best = suffix_variance(s, n); // no wrap
    if (n <= 2048) {
        for (std::size_t k = 1; k < n; ++k) {
            if (s.theta[k] == s.theta[k - 1])
                continue; // cutting through duplicates is not a reachable offset
            best = std::min(best, suffix_variance(s, k));
        }
        return best;
    }

    // Large inputs: one-pass scan with suffix sums to shortlist candidate
    // configurations, then stable re-evaluation of the shortlist.
    std::vector<double> sw(n + 1, 0.0), st(n + 1, 0.0);
    double a = 0.0, b = 0.0;
    for (std::size_t j = n; j-- > 0;) {
        sw[j] = sw[j + 1] + s.weight[j];
        st[j] = st[j + 1] + s.weight[j] * s.theta[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        a += s.weight[j] * s.theta[j];
        b += s.weight[j] * s.theta[j] * s.theta[j];
    }
    const double w = s.wsum;
    auto fast_var = [&](std::size_t k) {
        const double sum1 = a - k_two_pi * sw[k];
        const double sum2 = b - 2.0 * k_two_pi * st[k] + k_two_pi * k_two_pi * sw[k];
        const double mean = sum1 / w;
        return sum2 / w - mean * mean;
    };
    double best_fast = fast_var(n);
    for (std::size_t k = 1; k < n; ++k) {
        if (s.theta[k] == s.theta[k - 1])
            continue;
        best_fast = std::min(best_fast, fast_var(k));
    }
    const double slack = 1e-7 * (1.0 + std::abs(best_fast));
    best = suffix_variance(s, n);
    for (std::size_t k = 1; k < n; ++k) {
        if (s.theta[k] == s.theta[k - 1])
            continue;
        if (fast_var(k) <= best_fast + slack)
            best = std::min(best, suffix_variance(s, k));
    }
    return best;
}

} // namespace

double circular_spread(std::span<const double> angles_deg, std::span<const double> powers_mw) {
    check_angle_power_input(angles_deg, powers_mw);
    const SortedAngles s = sort_by_angle(angles_deg, powers_mw);
    const double var = std::max(0.0, min_variance_exact(s));
    return rad_to_deg(std::sqrt(var));
}

double circular_spread_grid(std::span<const double> angles_deg,
                            std::span<const double> powers_mw, double grid_step_deg) {
    check_angle_power_input(angles_deg, powers_mw);
    if (!(grid_step_deg > 0.0))
        throw invalid_input("circular_spread_grid: step must be positive");
    const SortedAngles s = sort_by_angle(angles_deg, powers_mw);
    const std::size_t n = s.theta.size();
    if (n == 1 || s.theta.front() == s.theta.back())
        return 0.0;

    const double step = deg_to_rad(grid_step_deg);
    const auto m_total = static_cast<std::size_t>(std::ceil(k_two_pi / step));

    std::vector<double> sw(n + 1, 0.0), st(n + 1, 0.0);
    double a = 0.0, b = 0.0;
    for (std::size_t j = n; j-- > 0;) {
        sw[j] = sw[j + 1] + s.weight[j];
        st[j] = st[j + 1] + s.weight[j] * s.theta[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        a += s.weight[j] * s.theta[j];
        b += s.weight[j] * s.theta[j] * s.theta[j];
    }
    const double w = s.wsum;

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = n;
    std::size_t k = n; // first wrapped index for the current offset
    for (std::size_t m = 0; m < m_total; ++m) {
        const double delta = static_cast<double>(m) * step;
        const double cut = k_two_pi - delta;
        while (k > 0 && s.theta[k - 1] >= cut)
            --k;
        const double sum1 = delta * w + a - k_two_pi * sw[k];
        const double sum2 = delta * delta * w + 2.0 * delta * a + b -
                            2.0 * k_two_pi * (delta * sw[k] + st[k]) +
                            k_two_pi * k_two_pi * sw[k];
        const double mean = sum1 / w;
        const double var = sum2 / w - mean * mean;
        if (var < best) {
            best = var;
            best_k = k;
        }
    }
    return rad_to_deg(std::sqrt(std::max(0.0, suffix_variance(s, best_k))));
}

double zenith_spread(std::span<const double> elevations_deg, std::span<const double> powers_mw) {
    check_angle_power_input(elevations_deg, powers_mw);
    for (double e : elevations_deg)
        if (!(e >= -90.0 && e <= 90.0))
            throw invalid_input("zenith_spread: elevations must lie in [-90, 90]");
    // Shift into the circular domain; the offset search cannot move the
    // optimum for data spanning half a circle or less.
    std::vector<double> shifted(elevations_deg.begin(), elevations_deg.end());
    for (double &e : shifted)
        e += 90.0;
    const SortedAngles s = sort_by_angle(shifted, powers_mw);
    return rad_to_deg(std::sqrt(std::max(0.0, min_variance_exact(s))));
}

double circular_spread_corrected(std::span<const double> angles_deg,
                                 std::span<const double> powers_mw) {
    const double raw = circular_spread(angles_deg, powers_mw);
    const double q = normalized_weight_square_sum(powers_mw);
    if (q >= 1.0 - 1e-12)
        return 0.0;
    return raw / std::sqrt(1.0 - q);
}

double zenith_spread_corrected(std::span<const double> elevations_deg,
                               std::span<const double> powers_mw) {
    const double raw = zenith_spread(elevations_deg, powers_mw);
    const double q = normalized_weight_square_sum(powers_mw);
    if (q >= 1.0 - 1e-12)
        return 0.0;
    return raw / std::sqrt(1.0 - q);
}

double rms_delay_spread(const PowerDelayProfile &pdp, double threshold_db) {
    pdp.validate();
    if (!(threshold_db >= 0.0))
        throw invalid_input("rms_delay_spread: threshold must be >= 0 dB");
    const double peak = pdp.peak_power_mw();
    if (peak <= 0.0)
        throw invalid_input("rms_delay_spread: profile carries no power");
    const double floor = peak * db_to_linear(-threshold_db);

    double wsum = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < pdp.size(); ++i) {
        if (pdp.powers_mw[i] >= floor && pdp.powers_mw[i] > 0.0) {
            wsum += pdp.powers_mw[i];
            mean += pdp.powers_mw[i] * static_cast<double>(i) * pdp.bin_width_ns;
        }
    }
    if (wsum <= 0.0)
        throw invalid_input("rms_delay_spread: no bins above threshold");
    mean /= wsum;
    double acc = 0.0;
    for (std::size_t i = 0; i < pdp.size(); ++i) {
        if (pdp.powers_mw[i] >= floor && pdp.powers_mw[i] > 0.0) {
            const double d = static_cast<double>(i) * pdp.bin_width_ns - mean;
            acc += pdp.powers_mw[i] * d * d;
        }
    }
    return std::sqrt(acc / wsum);
}

double k_factor_db(std::span<const double> powers_mw) {
    if (powers_mw.empty())
        throw invalid_input("k_factor: no components");
    double p_max = 0.0, p_tot = 0.0;
    for (double p : powers_mw) {
        if (!(std::isfinite(p) && p >= 0.0))
            throw invalid_input("k_factor: powers must be finite and >= 0");
        p_max = std::max(p_max, p);
        p_tot += p;
    }
    const double rest = p_tot - p_max;
    if (!(rest > 0.0))
        throw singular_k_factor("k_factor: a single component carries all the power");
    return linear_to_db(p_max / rest);
}

double k_factor_db(const PowerDelayProfile &pdp) {
    pdp.validate();
    std::vector<double> occupied;
    occupied.reserve(pdp.size());
    for (double p : pdp.powers_mw)
        if (p > pdp.noise_floor_mw)
            occupied.push_back(p);
    if (occupied.empty())
        throw invalid_input("k_factor: no bins above the noise floor");
    return k_factor_db(std::span<const double>(occupied));
}

namespace {

struct LineFit {
    double a = 0.0;
    double b = 0.0;
    double rss = 0.0;
    bool ok = false;
};

LineFit ols(std::span<const double> d, std::span<const double> y, std::size_t lo,
            std::size_t hi) {
    LineFit f;
    const std::size_t n = hi - lo;
    if (n < 2)
        return f;
    double dm = 0.0, ym = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        dm += d[i];
        ym += y[i];
    }
    dm /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        sxx += (d[i] - dm) * (d[i] - dm);
        sxy += (d[i] - dm) * (y[i] - ym);
    }
    if (sxx <= 0.0)
        return f; // no distance diversity on this side
    f.a = sxy / sxx;
    f.b = ym - f.a * dm;
    for (std::size_t i = lo; i < hi; ++i) {
        const double r = y[i] - (f.a * d[i] + f.b);
        f.rss += r * r;
    }
    f.ok = true;
    return f;
}

} // namespace

ZsaFit fit_zsa_local_mean(std::span<const double> distances_m,
                          std::span<const double> log10_values) {
    const std::size_t n = distances_m.size();
    if (n < 3 || log10_values.size() != n)
        throw invalid_input("fit_zsa_local_mean: need >= 3 paired records");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return distances_m[i] < distances_m[j];
    });
    std::vector<double> d(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = distances_m[order[i]];
        y[i] = log10_values[order[i]];
    }
    if (d.front() == d.back())
        throw invalid_input("fit_zsa_local_mean: all records share one distance");

    double yscale = 1.0;
    for (double v : y)
        yscale = std::max(yscale, std::abs(v));
    const double tol = 1e-9 * yscale;

    ZsaFit best;
    double best_rss = std::numeric_limits<double>::infinity();
    auto consider = [&](double a, double b, double c, double rss) {
        // Re-score against the actual max() model; a split whose fitted
        // surfaces cross inside the data scores worse here and is rejected.
        double real_rss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - std::max(a * d[i] + b, c);
            real_rss += r * r;
        }
        if (real_rss > rss + tol)
            return;
        if (real_rss < best_rss - tol * tol) {
            best_rss = real_rss;
            best = ZsaFit{a, b, c, real_rss};
        }
    };

    // Constant fit: floor everywhere.
    {
        double c = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
        double rss = 0.0;
        for (double v : y)
            rss += (v - c) * (v - c);
        consider(0.0, c, c, rss);
    }
    // Pure linear fit: floor placed tangent underneath.
    {
        const LineFit f = ols(d, y, 0, n);
        if (f.ok) {
            double c = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i)
                c = std::min(c, f.a * d[i] + f.b);
            consider(f.a, f.b, c, f.rss);
        }
    }
    // Split fits: the active linear branch is always a half-line in distance.
    for (std::size_t k = 1; k < n; ++k) {
        // linear on [0, k), floor on [k, n)
        {
            const LineFit f = ols(d, y, 0, k);
            if (f.ok) {
                double c = 0.0;
                for (std::size_t i = k; i < n; ++i)
                    c += y[i];
                c /= static_cast<double>(n - k);
                double rss = f.rss;
                for (std::size_t i = k; i < n; ++i)
                    rss += (y[i] - c) * (y[i] - c);
                consider(f.a, f.b, c, rss);
            }
        }
        // floor on [0, k), linear on [k, n)
        {
            const LineFit f = ols(d, y, k, n);
            if (f.ok) {
                double c = 0.0;
                for (std::size_t i = 0; i < k; ++i)
                    c += y[i];
                c /= static_cast<double>(k);
                double rss = f.rss;
                for (std::size_t i = 0; i < k; ++i)
                    rss += (y[i] - c) * (y[i] - c);
                consider(f.a, f.b, c, rss);
            }
        }
    }
    return best;
}

std::vector<double> xpr_per_bin(const PowerDelayProfile &pdp_vv, const PowerDelayProfile &pdp_vh,
                                double min_snr_db) {
    pdp_vv.validate();
    pdp_vh.validate();
    if (pdp_vv.size() != pdp_vh.size())
        throw invalid_input("xpr_per_bin: profiles must have the same length");
    if (std::abs(pdp_vv.bin_width_ns - pdp_vh.bin_width_ns) > 1e-12)
        throw invalid_input("xpr_per_bin: profiles must share one bin width");

    const double snr = db_to_linear(min_snr_db);
    const double thr_vv = pdp_vv.noise_floor_mw * snr;
    const double thr_vh = pdp_vh.noise_floor_mw * snr;

    std::vector<double> out;
    for (std::size_t i = 0; i < pdp_vv.size(); ++i) {
        const double vv = pdp_vv.powers_mw[i];
        const double vh = pdp_vh.powers_mw[i];
        if (vv >= thr_vv && vh >= thr_vh && vv > 0.0 && vh > 0.0)
            out.push_back(linear_to_db(vv / vh));
    }
    if (out.empty())
        throw empty_result("xpr_per_bin: no bins qualify in both polarizations");
    return out;
}

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// First and second moments of max(N(alpha, 1), 0), scaled by sigma and
// sigma^2 for the general case.
double trunc_g1(double alpha) { return alpha * norm_cdf(alpha) + norm_pdf(alpha); }

double trunc_g2(double alpha) {
    return (1.0 + alpha * alpha) * norm_cdf(alpha) + alpha * norm_pdf(alpha);
}

} // namespace

GaussianFit fit_truncated_gaussian_xpr(std::span<const double> samples_db) {
    if (samples_db.size() < 30)
        throw invalid_input("fit_truncated_gaussian_xpr: need at least 30 samples");
    double m1 = 0.0, m2 = 0.0;
    for (double s : samples_db) {
        if (!(std::isfinite(s) && s >= 0.0))
            throw invalid_input("fit_truncated_gaussian_xpr: samples must be >= 0");
        m1 += s;
        m2 += s * s;
    }
    const auto n = static_cast<double>(samples_db.size());
    m1 /= n;
    m2 /= n;
    const double var = m2 - m1 * m1;
    if (!(var > 0.0) || !(m1 > 0.0))
        throw invalid_input("fit_truncated_gaussian_xpr: degenerate samples");

    const double ratio = m2 / (m1 * m1);
    // Beyond alpha = 8 the truncated mass is below 1e-15; plain moments apply.
    if (ratio <= trunc_g2(8.0) / (trunc_g1(8.0) * trunc_g1(8.0)))
        return GaussianFit{m1, std::sqrt(var)};

    // g2/g1^2 decreases monotonically in alpha; bisect.
    double lo = -12.0, hi = 8.0;
    if (ratio >= trunc_g2(lo) / (trunc_g1(lo) * trunc_g1(lo)))
        throw invalid_input("fit_truncated_gaussian_xpr: samples are almost entirely truncated");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double r = trunc_g2(mid) / (trunc_g1(mid) * trunc_g1(mid));
        if (r > ratio)
            lo = mid;
        else
            hi = mid;
    }
    const double alpha = 0.5 * (lo + hi);
    const double sigma = m1 / trunc_g1(alpha);
    return GaussianFit{alpha * sigma, sigma};
}

double cross_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw invalid_input("cross_correlation: need paired sequences of length >= 3");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0) || !(syy > 0.0))
        throw invalid_input("cross_correlation: zero variance input");
    return sxy / std::sqrt(sxx * syy);
}

int count_directional_multipaths(const PowerDelayProfile &pdp, double snr_db) {
    pdp.validate();
    const double thr = pdp.noise_floor_mw * db_to_linear(snr_db);
    const auto &p = pdp.powers_mw;
    const std::size_t n = p.size();
    int count = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && p[j + 1] == p[i])
            ++j;
        // Plateau [i, j]; neighbors beyond the edges count as silence.
        const double left = i > 0 ? p[i - 1] : -std::numeric_limits<double>::infinity();
        const double right = j + 1 < n ? p[j + 1] : -std::numeric_limits<double>::infinity();
        if (p[i] >= thr && p[i] > 0.0 && p[i] > left && p[i] > right)
            ++count;
        i = j + 1;
    }
    return count;
}

double azimuth_spread_of_spectrum(const PowerAngularSpectrum &pas) {
    pas.validate();
    // Collapse elevation: the azimuth marginal carries the same weighted moments.
    std::vector<double> marginal(pas.n_azimuth(), 0.0);
    for (std::size_t a = 0; a < pas.n_azimuth(); ++a)
        for (std::size_t e = 0; e < pas.n_elevation(); ++e)
            marginal[a] += pas.at(a, e);
    return circular_spread(pas.azimuth_deg, marginal);
}

double zenith_spread_of_spectrum(const PowerAngularSpectrum &pas) {
    pas.validate();
    std::vector<double> marginal(pas.n_elevation(), 0.0);
    for (std::size_t a = 0; a < pas.n_azimuth(); ++a)
        for (std::size_t e = 0; e < pas.n_elevation(); ++e)
            marginal[e] += pas.at(a, e);
    return zenith_spread(pas.elevation_deg, marginal);
}

double weighted_mean(std::span<const double> values, std::span<const double> weights) {
    if (values.size() != weights.size() || values.empty())
        throw invalid_input("weighted_mean: size mismatch");
    double w = 0.0, acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        w += weights[i];
        acc += weights[i] * values[i];
    }
    if (!(w > 0.0))
        throw invalid_input("weighted_mean: zero total weight");
    return acc / w;
}

double weighted_std(std::span<const double> values, std::span<const double> weights) {
    const double mean = weighted_mean(values, weights);
    double w = 0.0, acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        w += weights[i];
        acc += weights[i] * (values[i] - mean) * (values[i] - mean);
    }
    return std::sqrt(std::max(0.0, acc / w));
}

double normalized_weight_square_sum(std::span<const double> weights) {
    double w = 0.0, w2 = 0.0;
    for (double x : weights) {
        w += x;
        w2 += x * x;
    }
    if (!(w > 0.0))
        throw invalid_input("normalized_weight_square_sum: zero total weight");
    return w2 / (w * w);
}

} // namespace mmwchan
