// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_AO_DRIVER_H
#define SIMWAVE_AO_DRIVER_H

#include <cstdint>
#include <functional>
#include <vector>

#include "simwave/phase_optimizer.hpp"
#include "simwave/power_optimizer.hpp"

namespace simwave
{

// Outer-loop protocol: alternate phase and power optimization from several
// random starts and keep the best.
struct AOConfig
{
    double tolerance = 1e-5;
    int max_outer_iters = 130;
    int num_starts = 5;
    double total_power = 1.0; // P_T, Watts
    double inner_phase_tol = 1e-6;
    int inner_phase_iters = 50;
    double inner_power_tol = 1e-8;
    int inner_power_iters = 50;
    LineSearchConfig line_search;
    std::uint64_t master_seed = 1;
};

struct AOStartResult
{
    PhaseState phases;
    PowerAllocation powers;
    std::vector<double> trajectory; // outer sum SE per iteration, non-decreasing
    int iterations = 0;
};

struct AOResult
{
    PhaseState best_phases;
    PowerAllocation best_powers;
    double best_sum_se = 0.0;
    int best_start = 0;
    std::vector<AOStartResult> starts;
};

AOResult run_ao(const PropagationOperators& ops, const ChannelStatistics& stats,
                int num_layers, const AOConfig& config);

// One row per sweep-axis value: mean best sum SE over independent user drops.
struct SweepPoint
{
    int axis_value = 0;
    double mean_sum_se = 0.0;
    std::vector<double> per_drop_se;
};

// Factory produces the scene for (axis value, drop index) and returns the
// layer count; seeds derive from the config's master seed, so sweeps are
// reproducible and drop-parallel.
using SceneFactory =
    std::function<int(int axis_value, std::uint64_t drop_seed,
                      PropagationOperators& ops, ChannelStatistics& stats)>;

std::vector<SweepPoint> sweep(const SceneFactory& factory, const std::vector<int>& axis_values,
                              int drops_per_point, const AOConfig& config);

std::string sweep_csv(const std::string& axis_name, const std::vector<SweepPoint>& points);

} // namespace simwave

#endif
