// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "simwave/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace simwave
{

namespace
{

// quadratic-form evaluation of tr(G w w^H G^H R) = (Gw)^H R (Gw)
double correlation_quadratic_form(const cmat& correlation, const cvec& beam)
{
    return (beam.adjoint() * (correlation * beam)).value().real();
}

} // namespace

RateReport sinr_closed_form(const CascadeState& state, const PropagationOperators& ops,
                            const ChannelStatistics& stats, const PowerAllocation& p)
{
    const int n_users = stats.num_users();
    const cmat beams = effective_input_response(state, ops); // N x N_t... column i = G w^1_i
    if (!p.powers.allFinite())
        throw std::invalid_argument("sinr_closed_form: non-finite powers");

    // per-beam trace terms and per-(k,i) LoS beam gains, both O(N^2) per entry
    rvec trace_terms(n_users);
    rmat los_gain(n_users, n_users); // |h_{k,LoS}^H G w_i|^2
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_users; ++i)
    {
        trace_terms(i) = correlation_quadratic_form(stats.correlation, beams.col(i));
        for (int k = 0; k < n_users; ++k)
            los_gain(k, i) = std::norm((stats.los_vectors.col(k).adjoint() * beams.col(i)).value());
    }

    RateReport report;
    report.sinr.resize(n_users);
    report.numerator.resize(n_users);
    report.denominator.resize(n_users);
    report.per_user_se.resize(n_users);
    for (int k = 0; k < n_users; ++k)
    {
        const double kappa = stats.rician_factor[k];
        double interference = 0.0;
        for (int i = 0; i < n_users; ++i)
        {
            interference += p.powers(i) * trace_terms(i);
            if (i != k)
                interference += p.powers(i) * kappa * los_gain(k, i);
        }
        interference += stats.noise_variance[k] * (1.0 + kappa) / stats.channel_gain[k];
        report.numerator(k) = p.powers(k) * kappa * los_gain(k, k);
        report.denominator(k) = interference;
        report.sinr(k) = report.numerator(k) / report.denominator(k);
        report.per_user_se(k) = std::log2(1.0 + report.sinr(k));
    }
    report.sum_se = report.per_user_se.sum();
    return report;
}

McSinrReport sinr_uatf_mc(const CascadeState& state, const PropagationOperators& ops,
                          const ChannelStatistics& stats, const PowerAllocation& p,
                          int num_samples, std::uint64_t seed)
{
    if (num_samples < 1)
        throw std::invalid_argument("sinr_uatf_mc: need at least one sample");

    const int n_users = stats.num_users();
    const cmat beams = effective_input_response(state, ops);

    const int n_blocks = num_samples >= 100 ? 100 : num_samples;
    std::vector<int> block_size(n_blocks, num_samples / n_blocks);
    for (int b = 0; b < num_samples % n_blocks; ++b)
        block_size[b] += 1;

    // per-block moment sums; merged serially in block order so the result is
    // independent of the thread count
    std::vector<cmat> mean_sum(n_blocks);  // sum of h_k^H g_i per (k,i)
    std::vector<rmat> power_sum(n_blocks); // sum of |h_k^H g_i|^2
    std::vector<rmat> power_sq_sum(n_blocks);

#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < n_blocks; ++b)
    {
        rng_t rng(stream_seed(seed, static_cast<std::uint64_t>(b)));
        cmat msum = cmat::Zero(n_users, n_users);
        rmat psum = rmat::Zero(n_users, n_users);
        rmat psq = rmat::Zero(n_users, n_users);
        for (int s = 0; s < block_size[b]; ++s)
        {
            const auto channels = sample_channels(stats, rng);
            for (int k = 0; k < n_users; ++k)
            {
                // common random numbers: the same h_k feeds every (k,i) term
                const cvec projections = beams.adjoint() * channels[k]; // (g_i^H h_k)
                for (int i = 0; i < n_users; ++i)
                {
                    const cx inner = std::conj(projections(i)); // h_k^H g_i
                    msum(k, i) += inner;
                    const double mag2 = std::norm(inner);
                    psum(k, i) += mag2;
                    psq(k, i) += mag2 * mag2;
                }
            }
        }
        mean_sum[b] = std::move(msum);
        power_sum[b] = std::move(psum);
        power_sq_sum[b] = std::move(psq);
    }

    cmat mean_total = cmat::Zero(n_users, n_users);
    rmat power_total = rmat::Zero(n_users, n_users);
    rmat power_sq_total = rmat::Zero(n_users, n_users);
    for (int b = 0; b < n_blocks; ++b)
    {
        mean_total += mean_sum[b];
        power_total += power_sum[b];
        power_sq_total += power_sq_sum[b];
    }

    const double inv_n = 1.0 / num_samples;
    auto assemble_sinr = [&](const cmat& mean_s, const rmat& power_s, double count) {
        rvec gamma(n_users);
        for (int k = 0; k < n_users; ++k)
        {
            const double desired = std::norm(mean_s(k, k) / count);
            double denom = -p.powers(k) * desired + stats.noise_variance[k];
            for (int i = 0; i < n_users; ++i)
                denom += p.powers(i) * power_s(k, i) / count;
            gamma(k) = p.powers(k) * desired / denom;
        }
        return gamma;
    };

    McSinrReport report;
    report.num_samples = num_samples;
    report.sinr = assemble_sinr(mean_total, power_total, num_samples);
    report.desired_power.resize(n_users);
    for (int k = 0; k < n_users; ++k)
        report.desired_power(k) = std::norm(mean_total(k, k) * inv_n);
    report.cross_power = power_total * inv_n;
    report.cross_power_se.resize(n_users, n_users);
    for (int k = 0; k < n_users; ++k)
        for (int i = 0; i < n_users; ++i)
        {
            const double m = report.cross_power(k, i);
            const double var = power_sq_total(k, i) * inv_n - m * m;
            report.cross_power_se(k, i) = std::sqrt(std::max(var, 0.0) * inv_n);
        }

    // jackknife over blocks for the SINR standard error
    report.sinr_se = rvec::Zero(n_users);
    if (n_blocks > 1)
    {
        rmat jack(n_blocks, n_users);
        for (int b = 0; b < n_blocks; ++b)
            jack.row(b) = assemble_sinr(mean_total - mean_sum[b], power_total - power_sum[b],
                                        num_samples - block_size[b])
                              .transpose();
        const rvec jack_mean = jack.colwise().mean().transpose();
        for (int k = 0; k < n_users; ++k)
        {
            double ss = 0.0;
            for (int b = 0; b < n_blocks; ++b)
            {
                const double d = jack(b, k) - jack_mean(k);
                ss += d * d;
            }
            report.sinr_se(k) = std::sqrt(ss * (n_blocks - 1.0) / n_blocks);
        }
    }
    return report;
}

double sum_se(const RateReport& report)
{
    return report.per_user_se.sum();
}

WmmseCoefficients wmmse_coefficients(const CascadeState& state,
                                     const PropagationOperators& ops,
                                     const ChannelStatistics& stats)
{
    const int n_users = stats.num_users();
    const cmat beams = effective_input_response(state, ops);

    rvec trace_terms(n_users);
    rmat los_gain(n_users, n_users);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_users; ++i)
    {
        trace_terms(i) = correlation_quadratic_form(stats.correlation, beams.col(i));
        for (int k = 0; k < n_users; ++k)
            los_gain(k, i) = std::norm((stats.los_vectors.col(k).adjoint() * beams.col(i)).value());
    }

    WmmseCoefficients coeffs;
    coeffs.signal.resize(n_users);
    coeffs.interference.resize(n_users, n_users);
    coeffs.noise.resize(n_users);
    for (int k = 0; k < n_users; ++k)
    {
        const double kappa = stats.rician_factor[k];
        coeffs.signal(k) = kappa * los_gain(k, k);
        for (int i = 0; i < n_users; ++i)
        {
            coeffs.interference(k, i) = trace_terms(i);
            if (i != k)
                coeffs.interference(k, i) += kappa * los_gain(k, i);
        }
        coeffs.noise(k) = stats.noise_variance[k] * (1.0 + kappa) / stats.channel_gain[k];
    }
    return coeffs;
}

double sum_se_from_coefficients(const WmmseCoefficients& coeffs, const rvec& p)
{
    double se = 0.0;
    for (int k = 0; k < coeffs.num_users(); ++k)
        se += std::log2(1.0 + coeffs.sinr(k, p));
    return se;
}

std::string rate_report_csv_row(const std::string& run_id, int n_atoms, int num_layers,
                                int num_users, double total_power_dbm,
                                std::uint64_t seed, const RateReport& report)
{
    char buf[64];
    std::string row = run_id;
    row += "," + std::to_string(n_atoms) + "," + std::to_string(num_layers) + "," +
           std::to_string(num_users);
    std::snprintf(buf, sizeof(buf), ",%.6g", total_power_dbm);
    row += buf;
    row += "," + std::to_string(seed);
    for (int k = 0; k < report.sinr.size(); ++k)
    {
        std::snprintf(buf, sizeof(buf), ",%.17g", report.sinr(k));
        row += buf;
    }
    std::snprintf(buf, sizeof(buf), ",%.17g", report.sum_se);
    row += buf;
    return row;
}

} // namespace simwave
