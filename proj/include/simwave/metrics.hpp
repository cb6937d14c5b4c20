// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_METRICS_H
#define SIMWAVE_METRICS_H

#include <cstdint>
#include <string>
#include <vector>

#include "simwave/cascade.hpp"
#include "simwave/power_allocation.hpp"
#include "simwave/propagation.hpp"
#include "simwave/types.hpp"

namespace simwave
{

// Closed-form statistical-CSI SINR and spectral efficiency, per user.
struct RateReport
{
    rvec sinr;        // gamma_k
    rvec numerator;   // D_k
    rvec denominator; // I_k
    rvec per_user_se; // log2(1 + gamma_k)
    double sum_se = 0.0;
};

// SINR written as gamma_k = p_k q_k / (sum_i C(k,i) p_i + u_k^2); all terms
// normalized by beta_k/(1+kappa_k). C(k,k) carries only the correlation trace
// term, the direct-beam term sits in q_k.
struct WmmseCoefficients
{
    rvec signal;       // q_k
    rmat interference; // C(k,i)
    rvec noise;        // u_k^2 = sigma_k^2 (1+kappa_k)/beta_k

    int num_users() const { return static_cast<int>(signal.size()); }

    double sinr(int k, const rvec& p) const
    {
        return p(k) * signal(k) / (interference.row(k).dot(p) + noise(k));
    }
};

// Monte-Carlo SINR estimate with standard errors (delete-one-block jackknife
// over the sample blocks).
struct McSinrReport
{
    rvec sinr;
    rvec sinr_se;
    rvec desired_power; // |E{h_k^H G w_k}|^2 estimate
    rmat cross_power;   // E{|h_k^H G w_i|^2} estimates
    rmat cross_power_se;
    int num_samples = 0;
};

RateReport sinr_closed_form(const CascadeState& state, const PropagationOperators& ops,
                            const ChannelStatistics& stats, const PowerAllocation& p);

// Estimates the use-and-then-forget SINR by sample averages over channel
// realizations. Samples are processed in fixed-size blocks with per-block RNG
// streams so the merged estimate is independent of thread count.
McSinrReport sinr_uatf_mc(const CascadeState& state, const PropagationOperators& ops,
                          const ChannelStatistics& stats, const PowerAllocation& p,
                          int num_samples, std::uint64_t seed);

double sum_se(const RateReport& report);

WmmseCoefficients wmmse_coefficients(const CascadeState& state,
                                     const PropagationOperators& ops,
                                     const ChannelStatistics& stats);

// Sum SE evaluated directly from the power-parameterized coefficients.
double sum_se_from_coefficients(const WmmseCoefficients& coeffs, const rvec& p);

// One CSV row: run_id, N, L, K, P_T_dbm, seed, gamma_1..gamma_K, sum_se
std::string rate_report_csv_row(const std::string& run_id, int n_atoms, int num_layers,
                                int num_users, double total_power_dbm,
                                std::uint64_t seed, const RateReport& report);

} // namespace simwave

#endif
