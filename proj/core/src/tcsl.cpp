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

#include "mmwchan/tcsl.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mmwchan/errors.hpp"
#include "mmwchan/lsp.hpp"
#include "mmwchan/units.hpp"

namespace mmwchan {

namespace {

constexpr double k_db_per_neper = 4.342944819032518; // 10 * log10(e)

TimeCluster make_cluster(std::span<const double> delays, std::span<const double> powers,
                         std::size_t lo, std::size_t hi, double first_arrival_ns) {
    TimeCluster c;
    c.start_ns = delays[lo];
    c.end_ns = delays[hi - 1];
    c.excess_delay_ns = delays[lo] - first_arrival_ns;
    c.member_indices.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
        c.member_indices.push_back(i);
        c.power_mw += powers[i];
    }
    return c;
}

} // namespace

std::vector<TimeCluster> partition_time_clusters(const PowerDelayProfile &pdp, double void_ns,
                                                 double occupancy_snr_db) {
    pdp.validate();
    if (!(void_ns > 0.0))
        throw invalid_input("partition_time_clusters: void interval must be positive");

    const double thr = pdp.noise_floor_mw * db_to_linear(occupancy_snr_db);
    std::vector<std::size_t> occupied;
    for (std::size_t i = 0; i < pdp.size(); ++i)
        if (pdp.powers_mw[i] >= thr && pdp.powers_mw[i] > 0.0)
            occupied.push_back(i);
    if (occupied.empty())
        throw empty_result("partition_time_clusters: no bins above the occupancy threshold");

    const double bw = pdp.bin_width_ns;
    const double first_arrival = static_cast<double>(occupied.front()) * bw;

    std::vector<TimeCluster> clusters;
    TimeCluster current;
    auto open_cluster = [&](std::size_t bin) {
        current = TimeCluster{};
        current.start_ns = static_cast<double>(bin) * bw;
        current.excess_delay_ns = current.start_ns - first_arrival;
    };
    open_cluster(occupied.front());
    for (std::size_t k = 0; k < occupied.size(); ++k) {
        const std::size_t bin = occupied[k];
        if (k > 0) {
            // Silent bins between consecutive occupied bins.
            const double gap_ns =
                static_cast<double>(bin - occupied[k - 1] - 1) * bw;
            if (gap_ns >= void_ns) {
                clusters.push_back(std::move(current));
                open_cluster(bin);
            }
        }
        current.member_indices.push_back(bin);
        current.power_mw += pdp.powers_mw[bin];
        current.end_ns = static_cast<double>(bin) * bw;
    }
    clusters.push_back(std::move(current));
    return clusters;
}

std::vector<TimeCluster> partition_time_clusters_paths(std::span<const double> delays_ns,
                                                       std::span<const double> powers_mw,
                                                       double void_ns) {
    if (delays_ns.empty() || delays_ns.size() != powers_mw.size())
        throw invalid_input("partition_time_clusters_paths: size mismatch");
    if (!(void_ns > 0.0))
        throw invalid_input("partition_time_clusters_paths: void interval must be positive");
    for (std::size_t i = 1; i < delays_ns.size(); ++i)
        if (delays_ns[i] < delays_ns[i - 1])
            throw invalid_input("partition_time_clusters_paths: delays must be sorted");

    std::vector<TimeCluster> clusters;
    std::size_t lo = 0;
    for (std::size_t i = 1; i <= delays_ns.size(); ++i) {
        if (i == delays_ns.size() || delays_ns[i] - delays_ns[i - 1] >= void_ns) {
            clusters.push_back(make_cluster(delays_ns, powers_mw, lo, i, delays_ns[0]));
            lo = i;
        }
    }
    return clusters;
}

std::vector<SpatialLobe> extract_spatial_lobes(const PowerAngularSpectrum &pas,
                                               double threshold_db, AngleDomain domain) {
    pas.validate();
    if (!(threshold_db <= 0.0))
        throw invalid_input("extract_spatial_lobes: threshold must be <= 0 dB");

    const std::size_t n_az = pas.n_azimuth();
    const std::size_t n_el = pas.n_elevation();
    double peak = 0.0;
    for (double p : pas.power_mw)
        peak = std::max(peak, p);
    if (peak <= 0.0)
        throw empty_result("extract_spatial_lobes: spectrum carries no power");
    const double thr = peak * db_to_linear(threshold_db);

    auto above = [&](std::size_t az, std::size_t el) {
        const double p = pas.at(az, el);
        return p >= thr && p > 0.0;
    };

    std::vector<char> visited(n_az * n_el, 0);
    std::vector<SpatialLobe> lobes;
    std::vector<std::pair<std::size_t, std::size_t>> stack;

    for (std::size_t a0 = 0; a0 < n_az; ++a0) {
        for (std::size_t e0 = 0; e0 < n_el; ++e0) {
            if (visited[a0 * n_el + e0] || !above(a0, e0))
                continue;
            SpatialLobe lobe;
            lobe.domain = domain;
            double lobe_peak = -1.0;
            stack.assign(1, {a0, e0});
            visited[a0 * n_el + e0] = 1;
            while (!stack.empty()) {
                auto [a, e] = stack.back();
                stack.pop_back();
                lobe.cells.emplace_back(a, e);
                lobe.power_mw += pas.at(a, e);
                if (pas.at(a, e) > lobe_peak) {
                    lobe_peak = pas.at(a, e);
                    lobe.peak_azimuth_deg = pas.azimuth_deg[a];
                    lobe.peak_elevation_deg = pas.elevation_deg[e];
                }
                auto push = [&](std::size_t na, std::size_t ne) {
                    if (!visited[na * n_el + ne] && above(na, ne)) {
                        visited[na * n_el + ne] = 1;
                        stack.emplace_back(na, ne);
                    }
                };
                if (n_az > 1) {
                    push((a + 1) % n_az, e);
                    push((a + n_az - 1) % n_az, e);
                }
                if (e + 1 < n_el)
                    push(a, e + 1);
                if (e > 0)
                    push(a, e - 1);
            }
            lobes.push_back(std::move(lobe));
        }
    }

    std::sort(lobes.begin(), lobes.end(), [](const SpatialLobe &x, const SpatialLobe &y) {
        if (x.power_mw != y.power_mw)
            return x.power_mw > y.power_mw;
        return x.cells.front() < y.cells.front();
    });
    return lobes;
}

LobeSpreads lobe_rms_spreads(const PowerAngularSpectrum &pas, const SpatialLobe &lobe) {
    if (lobe.cells.empty())
        throw invalid_input("lobe_rms_spreads: empty lobe");
    std::vector<double> az, el, w;
    az.reserve(lobe.cells.size());
    el.reserve(lobe.cells.size());
    w.reserve(lobe.cells.size());
    for (auto [a, e] : lobe.cells) {
        az.push_back(pas.azimuth_deg[a]);
        el.push_back(pas.elevation_deg[e]);
        w.push_back(pas.at(a, e));
    }
    return LobeSpreads{circular_spread(az, w), zenith_spread(el, w)};
}

void PooledDecayFit::add_group(std::span<const double> delays_ns,
                               std::span<const double> powers_mw) {
    if (delays_ns.size() != powers_mw.size())
        throw invalid_input("PooledDecayFit: size mismatch");
    if (delays_ns.size() < 2)
        return; // a single point carries no decay information
    double mx = 0.0, my = 0.0;
    std::vector<double> ydb(delays_ns.size());
    for (std::size_t i = 0; i < delays_ns.size(); ++i) {
        if (!(powers_mw[i] > 0.0))
            throw invalid_input("PooledDecayFit: powers must be positive");
        ydb[i] = linear_to_db(powers_mw[i]);
        mx += delays_ns[i];
        my += ydb[i];
    }
    mx /= static_cast<double>(delays_ns.size());
    my /= static_cast<double>(delays_ns.size());
    for (std::size_t i = 0; i < delays_ns.size(); ++i) {
        m_dx.push_back(delays_ns[i] - mx);
        m_dy.push_back(ydb[i] - my);
    }
}

bool PooledDecayFit::valid() const {
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m_dx.size(); ++i) {
        sxx += m_dx[i] * m_dx[i];
        sxy += m_dx[i] * m_dy[i];
    }
    return sxx > 0.0 && sxy < 0.0; // decay requires a negative dB slope
}

double PooledDecayFit::gamma_ns() const {
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m_dx.size(); ++i) {
        sxx += m_dx[i] * m_dx[i];
        sxy += m_dx[i] * m_dy[i];
    }
    if (!(sxx > 0.0))
        throw invalid_input("PooledDecayFit: no delay diversity");
    const double slope = sxy / sxx;
    if (!(slope < 0.0))
        throw invalid_input("PooledDecayFit: powers do not decay with delay");
    return -k_db_per_neper / slope;
}

double PooledDecayFit::residual_std_db() const {
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m_dx.size(); ++i) {
        sxx += m_dx[i] * m_dx[i];
        sxy += m_dx[i] * m_dy[i];
    }
    if (!(sxx > 0.0))
        return 0.0;
    const double slope = sxy / sxx;
    double acc = 0.0;
    for (std::size_t i = 0; i < m_dx.size(); ++i) {
        const double r = m_dy[i] - slope * m_dx[i];
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(m_dx.size()));
}

namespace {

SummaryStat summarize(const std::vector<double> &values) {
    SummaryStat s;
    s.count = values.size();
    if (values.empty())
        return s;
    double m = 0.0;
    for (double v : values)
        m += v;
    m /= static_cast<double>(values.size());
    double acc = 0.0;
    for (double v : values)
        acc += (v - m) * (v - m);
    s.mean = m;
    s.stddev = std::sqrt(acc / static_cast<double>(values.size()));
    return s;
}

} // namespace

TcslSummary tcsl_summary(std::span<const PowerDelayProfile> pdps,
                         std::span<const PowerAngularSpectrum> aoa_spectra,
                         std::span<const PowerAngularSpectrum> aod_spectra,
                         double lobe_threshold_db, double void_ns, double occupancy_snr_db) {
    if (pdps.empty() && aoa_spectra.empty() && aod_spectra.empty())
        throw invalid_input("tcsl_summary: no inputs");

    std::vector<double> cluster_counts, subpath_counts;
    PooledDecayFit cluster_fit, subpath_fit;

    for (const auto &pdp : pdps) {
        const auto clusters = partition_time_clusters(pdp, void_ns, occupancy_snr_db);
        cluster_counts.push_back(static_cast<double>(clusters.size()));
        std::vector<double> cd, cp;
        for (const auto &c : clusters) {
            subpath_counts.push_back(static_cast<double>(c.member_indices.size()));
            cd.push_back(c.excess_delay_ns);
            cp.push_back(c.power_mw);
            std::vector<double> sd, sp;
            for (std::size_t bin : c.member_indices) {
                sd.push_back(static_cast<double>(bin) * pdp.bin_width_ns);
                sp.push_back(pdp.powers_mw[bin]);
            }
            subpath_fit.add_group(sd, sp);
        }
        cluster_fit.add_group(cd, cp);
    }

    std::vector<double> aoa_counts, aod_counts, asa, esa, asd, esd;
    for (const auto &pas : aoa_spectra) {
        const auto lobes = extract_spatial_lobes(pas, lobe_threshold_db, AngleDomain::aoa);
        aoa_counts.push_back(static_cast<double>(lobes.size()));
        for (const auto &lobe : lobes) {
            const auto s = lobe_rms_spreads(pas, lobe);
            asa.push_back(s.azimuth_deg);
            esa.push_back(s.elevation_deg);
        }
    }
    for (const auto &pas : aod_spectra) {
        const auto lobes = extract_spatial_lobes(pas, lobe_threshold_db, AngleDomain::aod);
        aod_counts.push_back(static_cast<double>(lobes.size()));
        for (const auto &lobe : lobes) {
            const auto s = lobe_rms_spreads(pas, lobe);
            asd.push_back(s.azimuth_deg);
            esd.push_back(s.elevation_deg);
        }
    }

    TcslSummary out;
    out.cluster_count = summarize(cluster_counts);
    out.subpaths_per_cluster = summarize(subpath_counts);
    out.cluster_decay_valid = cluster_fit.valid();
    if (out.cluster_decay_valid) {
        out.cluster_decay_gamma_ns = cluster_fit.gamma_ns();
        out.per_cluster_shadowing_db = cluster_fit.residual_std_db();
    }
    out.subpath_decay_valid = subpath_fit.valid();
    if (out.subpath_decay_valid) {
        out.subpath_decay_gamma_ns = subpath_fit.gamma_ns();
        out.per_subpath_shadowing_db = subpath_fit.residual_std_db();
    }
    out.aoa_lobe_count = summarize(aoa_counts);
    out.aod_lobe_count = summarize(aod_counts);
    out.rms_lobe_asa_deg = summarize(asa);
    out.rms_lobe_esa_deg = summarize(esa);
    out.rms_lobe_asd_deg = summarize(asd);
    out.rms_lobe_esd_deg = summarize(esd);
    return out;
}

PowerAngularSpectrum render_angular_spectrum(const ChannelImpulseResponse &cir,
                                             AngleDomain domain,
                                             const CirExtractionOptions &opts) {
    if (cir.paths.empty())
        throw invalid_input("render_angular_spectrum: empty impulse response");
    if (!(opts.grid_step_deg > 0.0) ||
        std::abs(std::round(360.0 / opts.grid_step_deg) * opts.grid_step_deg - 360.0) > 1e-9)
        throw invalid_input("render_angular_spectrum: grid step must divide 360");
    if (!(opts.beam_kernel_sigma_deg >= 0.0))
        throw invalid_input("render_angular_spectrum: kernel sigma must be >= 0");

    const double step = opts.grid_step_deg;
    const auto n_az = static_cast<std::size_t>(std::llround(360.0 / step));
    const double sigma = opts.beam_kernel_sigma_deg;
    // Footprint cut at 2.5 sigma: beyond that the deposit is negligible.
    const long half = sigma > 0.0 ? std::max(1L, std::lround(2.5 * sigma / step)) : 0L;

    double el_min = 90.0, el_max = -90.0;
    for (const auto &p : cir.paths) {
        const double el = domain == AngleDomain::aoa ? p.aoa_elevation_deg : p.aod_elevation_deg;
        el_min = std::min(el_min, el);
        el_max = std::max(el_max, el);
    }
    const double pad = static_cast<double>(half + 1) * step;
    el_min = std::max(-90.0, std::floor((el_min - pad) / step) * step);
    el_max = std::min(90.0, std::ceil((el_max + pad) / step) * step);
    const auto n_el = static_cast<std::size_t>(std::llround((el_max - el_min) / step)) + 1;

    PowerAngularSpectrum pas;
    pas.azimuth_deg.resize(n_az);
    for (std::size_t a = 0; a < n_az; ++a)
        pas.azimuth_deg[a] = static_cast<double>(a) * step;
    pas.elevation_deg.resize(n_el);
    for (std::size_t e = 0; e < n_el; ++e)
        pas.elevation_deg[e] = el_min + static_cast<double>(e) * step;
    pas.power_mw.assign(n_az * n_el, 0.0);

    std::vector<double> weight(static_cast<std::size_t>(half) + 1, 1.0);
    if (sigma > 0.0)
        for (long d = 0; d <= half; ++d) {
            const double x = static_cast<double>(d) * step;
            weight[static_cast<std::size_t>(d)] = std::exp(-0.5 * x * x / (sigma * sigma));
        }

    for (const auto &p : cir.paths) {
        const double az = domain == AngleDomain::aoa ? p.aoa_azimuth_deg : p.aod_azimuth_deg;
        const double el = domain == AngleDomain::aoa ? p.aoa_elevation_deg : p.aod_elevation_deg;
        const long ca = std::lround(az / step) % static_cast<long>(n_az);
        const long ce = std::lround((el - el_min) / step);
        const long el_lo = std::max(0L, ce - half);
        const long el_hi = std::min(static_cast<long>(n_el) - 1, ce + half);
        // Separable kernel, normalized over the reachable footprint so the
        // deposit preserves the path power.
        double norm = 0.0;
        for (long da = -half; da <= half; ++da)
            for (long e = el_lo; e <= el_hi; ++e)
                norm += weight[static_cast<std::size_t>(std::labs(da))] *
                        weight[static_cast<std::size_t>(std::labs(e - ce))];
        const double scale = p.power_mw / norm;
        for (long da = -half; da <= half; ++da) {
            const auto a = static_cast<std::size_t>(
                ((ca + da) % static_cast<long>(n_az) + static_cast<long>(n_az)) %
                static_cast<long>(n_az));
            const double wa = weight[static_cast<std::size_t>(std::labs(da))];
            for (long e = el_lo; e <= el_hi; ++e)
                pas.at(a, static_cast<std::size_t>(e)) +=
                    scale * wa * weight[static_cast<std::size_t>(std::labs(e - ce))];
        }
    }
    return pas;
}

CirLobeStats extract_cir_lobe_stats(const ChannelImpulseResponse &cir, AngleDomain domain,
                                    const CirExtractionOptions &opts) {
    const PowerAngularSpectrum pas = render_angular_spectrum(cir, domain, opts);
    const auto lobes = extract_spatial_lobes(pas, opts.lobe_threshold_db, domain);

    // Map above-threshold cells to their lobe.
    const std::size_t n_el = pas.n_elevation();
    std::vector<int> cell_lobe(pas.power_mw.size(), -1);
    for (std::size_t li = 0; li < lobes.size(); ++li)
        for (auto [a, e] : lobes[li].cells)
            cell_lobe[a * n_el + e] = static_cast<int>(li);

    const double step = opts.grid_step_deg;
    const double el_min = pas.elevation_deg.front();
    std::vector<std::vector<std::size_t>> members(lobes.size());
    for (std::size_t i = 0; i < cir.paths.size(); ++i) {
        const auto &p = cir.paths[i];
        const double az = domain == AngleDomain::aoa ? p.aoa_azimuth_deg : p.aod_azimuth_deg;
        const double el = domain == AngleDomain::aoa ? p.aoa_elevation_deg : p.aod_elevation_deg;
        const auto a = static_cast<std::size_t>(std::lround(az / step) %
                                                static_cast<long>(pas.n_azimuth()));
        const auto e = static_cast<std::size_t>(std::lround((el - el_min) / step));
        const int lobe = cell_lobe[a * n_el + e];
        if (lobe >= 0)
            members[static_cast<std::size_t>(lobe)].push_back(i);
    }

    CirLobeStats out;
    out.lobe_count = static_cast<int>(lobes.size());
    for (const auto &m : members) {
        if (m.size() < 2)
            continue;
        std::vector<double> az, el, w;
        for (std::size_t i : m) {
            const auto &p = cir.paths[i];
            az.push_back(domain == AngleDomain::aoa ? p.aoa_azimuth_deg : p.aod_azimuth_deg);
            el.push_back(domain == AngleDomain::aoa ? p.aoa_elevation_deg
                                                    : p.aod_elevation_deg);
            w.push_back(p.power_mw);
        }
        out.azimuth_spreads_deg.push_back(circular_spread_corrected(az, w));
        out.elevation_spreads_deg.push_back(zenith_spread_corrected(el, w));
    }
    return out;
}

namespace {

// Per-realization extraction results, merged in realization order so the
// summary is identical for any worker count.
struct CirExtraction {
    double cluster_count = 0.0;
    std::vector<double> subpath_counts;
    std::vector<double> cluster_delays, cluster_powers;
    std::vector<std::vector<double>> subpath_delays, subpath_powers;
    double aoa_lobes = 0.0, aod_lobes = 0.0;
    std::vector<double> asa, esa, asd, esd;
};

CirExtraction extract_one(const ChannelImpulseResponse &cir, const CirExtractionOptions &opts) {
    CirExtraction r;
    std::vector<double> delays, powers;
    delays.reserve(cir.paths.size());
    powers.reserve(cir.paths.size());
    for (const auto &p : cir.paths) {
        delays.push_back(p.delay_ns);
        powers.push_back(p.power_mw);
    }
    const auto clusters = partition_time_clusters_paths(delays, powers, opts.void_ns);
    r.cluster_count = static_cast<double>(clusters.size());
    for (const auto &c : clusters) {
        r.subpath_counts.push_back(static_cast<double>(c.member_indices.size()));
        r.cluster_delays.push_back(c.excess_delay_ns);
        r.cluster_powers.push_back(c.power_mw);
        std::vector<double> sd, sp;
        for (std::size_t i : c.member_indices) {
            sd.push_back(delays[i]);
            sp.push_back(powers[i]);
        }
        r.subpath_delays.push_back(std::move(sd));
        r.subpath_powers.push_back(std::move(sp));
    }
    const auto aoa = extract_cir_lobe_stats(cir, AngleDomain::aoa, opts);
    const auto aod = extract_cir_lobe_stats(cir, AngleDomain::aod, opts);
    r.aoa_lobes = aoa.lobe_count;
    r.aod_lobes = aod.lobe_count;
    r.asa = aoa.azimuth_spreads_deg;
    r.esa = aoa.elevation_spreads_deg;
    r.asd = aod.azimuth_spreads_deg;
    r.esd = aod.elevation_spreads_deg;
    return r;
}

} // namespace

TcslSummary tcsl_summary(std::span<const ChannelImpulseResponse> ensemble,
                         const CirExtractionOptions &opts, unsigned n_threads) {
    if (ensemble.empty())
        throw invalid_input("tcsl_summary: empty ensemble");

    std::vector<CirExtraction> per_cir(ensemble.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(ensemble.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < ensemble.size(); ++i)
            per_cir[i] = extract_one(ensemble[i], opts);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t i = t; i < ensemble.size(); i += workers)
                    per_cir[i] = extract_one(ensemble[i], opts);
            });
        }
        for (auto &th : pool)
            th.join();
    }

    std::vector<double> cluster_counts, subpath_counts, aoa_counts, aod_counts;
    std::vector<double> asa, esa, asd, esd;
    PooledDecayFit cluster_fit, subpath_fit;
    for (const auto &r : per_cir) {
        cluster_counts.push_back(r.cluster_count);
        subpath_counts.insert(subpath_counts.end(), r.subpath_counts.begin(),
                              r.subpath_counts.end());
        cluster_fit.add_group(r.cluster_delays, r.cluster_powers);
        for (std::size_t c = 0; c < r.subpath_delays.size(); ++c)
            subpath_fit.add_group(r.subpath_delays[c], r.subpath_powers[c]);
        aoa_counts.push_back(r.aoa_lobes);
        aod_counts.push_back(r.aod_lobes);
        asa.insert(asa.end(), r.asa.begin(), r.asa.end());
        esa.insert(esa.end(), r.esa.begin(), r.esa.end());
        asd.insert(asd.end(), r.asd.begin(), r.asd.end());
        esd.insert(esd.end(), r.esd.begin(), r.esd.end());
    }

    TcslSummary out;
    out.cluster_count = summarize(cluster_counts);
    out.subpaths_per_cluster = summarize(subpath_counts);
    out.cluster_decay_valid = cluster_fit.valid();
    if (out.cluster_decay_valid) {
        out.cluster_decay_gamma_ns = cluster_fit.gamma_ns();
        out.per_cluster_shadowing_db = cluster_fit.residual_std_db();
    }
    out.subpath_decay_valid = subpath_fit.valid();
    if (out.subpath_decay_valid) {
        out.subpath_decay_gamma_ns = subpath_fit.gamma_ns();
        out.per_subpath_shadowing_db = subpath_fit.residual_std_db();
    }
    out.aoa_lobe_count = summarize(aoa_counts);
    out.aod_lobe_count = summarize(aod_counts);
    out.rms_lobe_asa_deg = summarize(asa);
    out.rms_lobe_esa_deg = summarize(esa);
    out.rms_lobe_asd_deg = summarize(asd);
    out.rms_lobe_esd_deg = summarize(esd);
    return out;
}

} // namespace mmwchan
