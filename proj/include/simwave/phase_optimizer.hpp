// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_PHASE_OPTIMIZER_H
#define SIMWAVE_PHASE_OPTIMIZER_H

#include <vector>

#include "simwave/metrics.hpp"
#include "simwave/types.hpp"

namespace simwave
{

// Armijo-Goldstein backtracking parameters for the projected gradient ascent.
struct LineSearchConfig
{
    double initial_step = 1.0;   // L_i
    double shrink = 0.5;         // kappa in (0,1)
    int max_backtracks = 30;
    bool warm_start = true;      // L_{i+1} = 2 * accepted step
    bool layer_cyclic = false;   // update one layer at a time instead of jointly
};

// Conjugate (Wirtinger) gradients of the SINR numerator/denominator and the
// assembled sum-SE objective, per layer.
struct GradientBundle
{
    std::vector<cvec> layers; // gradient of the objective w.r.t. conj(phi_l)
};

struct PhaseStepResult
{
    PhaseState phases;
    double step = 0.0; // accepted step size, 0 signals a stall
    double objective = 0.0;
    int backtracks = 0;
};

struct PhaseTrajectoryPoint
{
    int iteration = 0;
    double objective = 0.0;
    double step = 0.0;
    int backtracks = 0;
};

cvec grad_D(int user, int layer, const CascadeState& state, const PropagationOperators& ops,
            const ChannelStatistics& stats, const PowerAllocation& p);

cvec grad_I(int user, int layer, const CascadeState& state, const PropagationOperators& ops,
            const ChannelStatistics& stats, const PowerAllocation& p);

GradientBundle grad_objective(const CascadeState& state, const PropagationOperators& ops,
                              const ChannelStatistics& stats, const PowerAllocation& p);

// Entry-wise u/|u|; zero entries map to 1+0j.
cvec project_unit_modulus(const cvec& u);

// One projected-ascent step with backtracking. All layers move jointly.
PhaseStepResult pga_step(const PhaseState& phases, const GradientBundle& bundle,
                         double current_objective, const LineSearchConfig& ls,
                         const PropagationOperators& ops, const ChannelStatistics& stats,
                         const PowerAllocation& p);

struct PhaseOptResult
{
    PhaseState phases;
    std::vector<PhaseTrajectoryPoint> trajectory;
};

PhaseOptResult optimize_phases(const PhaseState& initial, const PropagationOperators& ops,
                               const ChannelStatistics& stats, const PowerAllocation& p,
                               double tol, int max_iters, const LineSearchConfig& ls);

std::string phase_trajectory_csv(const std::vector<PhaseTrajectoryPoint>& trajectory);

} // namespace simwave

#endif
