// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_POWER_OPTIMIZER_H
#define SIMWAVE_POWER_OPTIMIZER_H

#include <string>
#include <vector>

#include "simwave/metrics.hpp"
#include "simwave/power_allocation.hpp"
#include "simwave/types.hpp"

namespace simwave
{

// Block state of the weighted-MMSE power loop.
struct WmmseState
{
    rvec receivers; // v_k
    rvec weights;   // d_k = 1/e_k
    rvec mses;      // e_k in (0,1]
};

struct PowerTrajectoryPoint
{
    int iteration = 0;
    double sum_se = 0.0;
    rvec powers;
};

// v_k = sqrt(p_k q_k) / (p_k q_k + sum_i p_i C(k,i) + u_k^2)
rvec mmse_receiver(const WmmseCoefficients& coeffs, const rvec& p);

// e_k = v_k^2 (p_k q_k + sum_i C(k,i) p_i + u_k^2) - 2 v_k sqrt(q_k p_k) + 1
rvec mse(const WmmseCoefficients& coeffs, const rvec& p, const rvec& v);

rvec update_weights(const rvec& e);

// Closed-form stationary powers with a bisected budget multiplier and the
// per-entry cap min(P_T, .); always returns a feasible allocation.
PowerAllocation update_powers(const WmmseCoefficients& coeffs, const rvec& v, const rvec& d,
                              double total_power);

struct PowerOptResult
{
    PowerAllocation allocation;
    std::vector<PowerTrajectoryPoint> trajectory;
};

// Cycles receiver / weight / power updates; a safeguard keeps the sum-SE
// trajectory non-decreasing.
PowerOptResult optimize_powers(const WmmseCoefficients& coeffs, const PowerAllocation& initial,
                               double total_power, double tol, int max_iters);

std::string power_trajectory_csv(const std::vector<PowerTrajectoryPoint>& trajectory);

} // namespace simwave

#endif
