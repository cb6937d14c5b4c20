// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "simwave/ao_driver.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace simwave
{

namespace
{

AOStartResult run_single_start(const PropagationOperators& ops, const ChannelStatistics& stats,
                               int num_layers, const AOConfig& config,
                               std::uint64_t start_seed)
{
    const int n_atoms = static_cast<int>(ops.layer_transfer.rows());
    rng_t rng(start_seed);

    AOStartResult result;
    result.phases = PhaseState::random(num_layers, n_atoms, rng);
    result.powers = PowerAllocation::uniform(stats.num_users(), config.total_power);

    double objective =
        sinr_closed_form(compose(result.phases, ops), ops, stats, result.powers).sum_se;
    result.trajectory.push_back(objective);

    for (int iter = 1; iter <= config.max_outer_iters; ++iter)
    {
        PhaseOptResult phase_pass =
            optimize_phases(result.phases, ops, stats, result.powers, config.inner_phase_tol,
                            config.inner_phase_iters, config.line_search);
        result.phases = std::move(phase_pass.phases);

        const WmmseCoefficients coeffs = wmmse_coefficients(compose(result.phases, ops), ops, stats);
        PowerOptResult power_pass =
            optimize_powers(coeffs, result.powers, config.total_power, config.inner_power_tol,
                            config.inner_power_iters);
        result.powers = std::move(power_pass.allocation);

        objective = sum_se_from_coefficients(coeffs, result.powers.powers);
        result.trajectory.push_back(objective);
        result.iterations = iter;
        if (std::abs(result.trajectory[iter] - result.trajectory[iter - 1]) < config.tolerance)
            break;
    }
    return result;
}

} // namespace

AOResult run_ao(const PropagationOperators& ops, const ChannelStatistics& stats,
                int num_layers, const AOConfig& config)
{
    if (config.num_starts < 1)
        throw std::invalid_argument("run_ao: need at least one start");

    AOResult result;
    result.starts.resize(config.num_starts);
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < config.num_starts; ++s)
        result.starts[s] = run_single_start(ops, stats, num_layers, config,
                                            stream_seed(config.master_seed, 0, s));

    result.best_start = 0;
    result.best_sum_se = result.starts[0].trajectory.back();
    for (int s = 1; s < config.num_starts; ++s)
        if (result.starts[s].trajectory.back() > result.best_sum_se)
        {
            result.best_sum_se = result.starts[s].trajectory.back();
            result.best_start = s;
        }
    result.best_phases = result.starts[result.best_start].phases;
    result.best_powers = result.starts[result.best_start].powers;
    return result;
}

std::vector<SweepPoint> sweep(const SceneFactory& factory, const std::vector<int>& axis_values,
                              int drops_per_point, const AOConfig& config)
{
    if (drops_per_point < 1)
        throw std::invalid_argument("sweep: need at least one drop per point");

    std::vector<SweepPoint> points(axis_values.size());
    for (std::size_t a = 0; a < axis_values.size(); ++a)
    {
        SweepPoint& point = points[a];
        point.axis_value = axis_values[a];
        point.per_drop_se.resize(drops_per_point);
#pragma omp parallel for schedule(dynamic)
        for (int drop = 0; drop < drops_per_point; ++drop)
        {
            PropagationOperators ops;
            ChannelStatistics stats;
            // drop seeds are axis-independent, so points share user drops and
            // the sweep compares axis values under common random numbers
            const std::uint64_t drop_seed = stream_seed(config.master_seed, 0xD80B, drop);
            const int num_layers = factory(axis_values[a], drop_seed, ops, stats);

            AOConfig local = config;
            local.master_seed = stream_seed(drop_seed, 0xA0, 0);
            const AOResult result = run_ao(ops, stats, num_layers, local);
            point.per_drop_se[drop] = result.best_sum_se;
        }
        double mean = 0.0;
        for (double se : point.per_drop_se)
            mean += se;
        point.mean_sum_se = mean / drops_per_point;
    }
    return points;
}

std::string sweep_csv(const std::string& axis_name, const std::vector<SweepPoint>& points)
{
    std::string csv = axis_name + ",mean_sum_se";
    const int drops = points.empty() ? 0 : static_cast<int>(points.front().per_drop_se.size());
    for (int d = 1; d <= drops; ++d)
        csv += ",drop_" + std::to_string(d);
    csv += "\n";
    char buf[64];
    for (const auto& pt : points)
    {
        csv += std::to_string(pt.axis_value);
        std::snprintf(buf, sizeof(buf), ",%.17g", pt.mean_sum_se);
        csv += buf;
        for (double se : pt.per_drop_se)
        {
            std::snprintf(buf, sizeof(buf), ",%.17g", se);
            csv += buf;
        }
        csv += "\n";
    }
    return csv;
}

} // namespace simwave
