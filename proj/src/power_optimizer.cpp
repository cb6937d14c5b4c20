// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "simwave/power_optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace simwave
{

rvec mmse_receiver(const WmmseCoefficients& coeffs, const rvec& p)
{
    const int n_users = coeffs.num_users();
    rvec v(n_users);
    for (int k = 0; k < n_users; ++k)
    {
        const double signal = p(k) * coeffs.signal(k);
        v(k) = std::sqrt(signal) / (signal + coeffs.interference.row(k).dot(p) + coeffs.noise(k));
    }
    return v;
}

rvec mse(const WmmseCoefficients& coeffs, const rvec& p, const rvec& v)
{
    const int n_users = coeffs.num_users();
    rvec e(n_users);
    for (int k = 0; k < n_users; ++k)
    {
        const double total = p(k) * coeffs.signal(k) + coeffs.interference.row(k).dot(p) +
                             coeffs.noise(k);
        e(k) = v(k) * v(k) * total - 2.0 * v(k) * std::sqrt(coeffs.signal(k) * p(k)) + 1.0;
    }
    return e;
}

rvec update_weights(const rvec& e)
{
    rvec d(e.size());
    for (int k = 0; k < e.size(); ++k)
    {
        if (!(e(k) > 0.0))
            throw std::invalid_argument("update_weights: MSE must be positive");
        d(k) = 1.0 / e(k);
    }
    return d;
}

namespace
{

// Unconstrained stationary point with a multiplier eta >= 0 on the budget:
// p_k = q_k d_k^2 v_k^2 / (q_k d_k v_k^2 + sum_j d_j v_j^2 C(j,k) + eta)^2
rvec stationary_powers(const WmmseCoefficients& coeffs, const rvec& v, const rvec& d,
                       double total_power, double eta)
{
    const int n_users = coeffs.num_users();
    const rvec dv2 = d.cwiseProduct(v.cwiseProduct(v));
    const rvec column_sums = coeffs.interference.transpose() * dv2; // sum_j d_j v_j^2 C(j,k)
    rvec p(n_users);
    for (int k = 0; k < n_users; ++k)
    {
        const double denom = coeffs.signal(k) * dv2(k) + column_sums(k) + eta;
        if (denom <= 0.0)
        {
            p(k) = 0.0;
            continue;
        }
        p(k) = std::min(total_power,
                        coeffs.signal(k) * d(k) * d(k) * v(k) * v(k) / (denom * denom));
    }
    return p;
}

} // namespace

PowerAllocation update_powers(const WmmseCoefficients& coeffs, const rvec& v, const rvec& d,
                              double total_power)
{
    PowerAllocation alloc;
    alloc.budget = total_power;

    rvec p = stationary_powers(coeffs, v, d, total_power, 0.0);
    if (p.maxCoeff() <= 0.0)
    {
        // degenerate fallback
        alloc.powers = rvec::Constant(coeffs.num_users(), total_power / coeffs.num_users());
        return alloc;
    }

    if (p.sum() > total_power)
    {
        // sum p(eta) is decreasing in eta; bracket then bisect
        double lo = 0.0;
        double hi = 1.0;
        while (stationary_powers(coeffs, v, d, total_power, hi).sum() > total_power)
            hi *= 2.0;
        for (int it = 0; it < 200; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            const double total = stationary_powers(coeffs, v, d, total_power, mid).sum();
            if (total > total_power)
                lo = mid;
            else
                hi = mid;
            if (std::abs(total - total_power) <= 1e-8 * total_power)
                break;
        }
        p = stationary_powers(coeffs, v, d, total_power, hi);
    }
    alloc.powers = p;
    return alloc;
}

namespace
{

// Cycles v -> e -> d -> p from the given point, appending to the trajectory.
// The safeguard keeps the sum-SE sequence non-decreasing.
void wmmse_descend(const WmmseCoefficients& coeffs, double total_power, double tol,
                   int max_iters, PowerOptResult& result, double& current_se)
{
    const int base_iter = static_cast<int>(result.trajectory.size()) - 1;
    for (int iter = 1; iter <= max_iters; ++iter)
    {
        const rvec v = mmse_receiver(coeffs, result.allocation.powers);
        const rvec e = mse(coeffs, result.allocation.powers, v);
        const rvec d = update_weights(e);
        const PowerAllocation candidate = update_powers(coeffs, v, d, total_power);
        const double candidate_se = sum_se_from_coefficients(coeffs, candidate.powers);
        if (candidate_se < current_se)
            break; // safeguard: keep the previous allocation
        const double gain = candidate_se - current_se;
        result.allocation = candidate;
        current_se = candidate_se;
        result.trajectory.push_back({base_iter + iter, current_se, result.allocation.powers});
        if (gain < tol)
            break;
    }
}

} // namespace

PowerOptResult optimize_powers(const WmmseCoefficients& coeffs, const PowerAllocation& initial,
                               double total_power, double tol, int max_iters)
{
    if (!initial.feasible())
        throw std::invalid_argument("optimize_powers: infeasible starting point");

    PowerOptResult result;
    result.allocation = initial;
    result.allocation.budget = total_power;

    double current_se = sum_se_from_coefficients(coeffs, result.allocation.powers);
    result.trajectory.push_back({0, current_se, result.allocation.powers});

    wmmse_descend(coeffs, total_power, tol, max_iters, result, current_se);

    // the sum SE is nonconvex in p and its maximizer can sit at a vertex;
    // if a single-user allocation beats the converged point, restart from it
    const int n_users = coeffs.num_users();
    int best_corner = -1;
    double best_corner_se = current_se;
    for (int k = 0; k < n_users; ++k)
    {
        rvec corner = rvec::Zero(n_users);
        corner(k) = total_power;
        const double se = sum_se_from_coefficients(coeffs, corner);
        if (se > best_corner_se)
        {
            best_corner_se = se;
            best_corner = k;
        }
    }
    if (best_corner >= 0)
    {
        result.allocation.powers = rvec::Zero(n_users);
        result.allocation.powers(best_corner) = total_power;
        current_se = best_corner_se;
        result.trajectory.push_back({static_cast<int>(result.trajectory.size()), current_se,
                                     result.allocation.powers});
        wmmse_descend(coeffs, total_power, tol, max_iters, result, current_se);
    }
    return result;
}

std::string power_trajectory_csv(const std::vector<PowerTrajectoryPoint>& trajectory)
{
    std::string csv = "iteration,sum_se";
    const int n_users = trajectory.empty() ? 0 : static_cast<int>(trajectory.front().powers.size());
    for (int k = 1; k <= n_users; ++k)
        csv += ",p_" + std::to_string(k);
    csv += "\n";
    char buf[64];
    for (const auto& pt : trajectory)
    {
        csv += std::to_string(pt.iteration);
        std::snprintf(buf, sizeof(buf), ",%.17g", pt.sum_se);
        csv += buf;
        for (int k = 0; k < pt.powers.size(); ++k)
        {
            std::snprintf(buf, sizeof(buf), ",%.17g", pt.powers(k));
            csv += buf;
        }
        csv += "\n";
    }
    return csv;
}

} // namespace simwave
