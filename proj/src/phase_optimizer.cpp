// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "simwave/phase_optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace simwave
{

namespace
{

double evaluate_objective(const PhaseState& phases, const PropagationOperators& ops,
                          const ChannelStatistics& stats, const PowerAllocation& p)
{
    return sinr_closed_form(compose(phases, ops), ops, stats, p).sum_se;
}

// Shared per-layer quantities of the Proposition-2 gradient chain, evaluated
// matrix-free: the N x N outer products are never formed.
struct GradientContext
{
    cmat beams;            // G w^1_i, N x K
    cmat prefix_beams;     // C_l w^1_i per layer (layer-major blocks)
    cmat suffix_los;       // A_l^H h_{k,LoS}
    cmat suffix_corr_beam; // A_l^H (R^T G w^1_i)
    cmat los_inner;        // h_{k,LoS}^H G w^1_i per (k,i)
};

GradientContext make_context(const CascadeState& state, const PropagationOperators& ops,
                             const ChannelStatistics& stats)
{
    const int n_users = stats.num_users();
    const int num_layers = static_cast<int>(state.prefix.size());
    const int n_atoms = static_cast<int>(state.response.rows());

    GradientContext ctx;
    ctx.beams = effective_input_response(state, ops);
    ctx.los_inner = stats.los_vectors.adjoint() * ctx.beams;
    ctx.prefix_beams.resize(n_atoms, num_layers * n_users);
    ctx.suffix_los.resize(n_atoms, num_layers * n_users);
    ctx.suffix_corr_beam.resize(n_atoms, num_layers * n_users);

    const cmat corr_beams = stats.correlation.transpose() * ctx.beams;
#pragma omp parallel for schedule(static)
    for (int l = 0; l < num_layers; ++l)
    {
        ctx.prefix_beams.middleCols(l * n_users, n_users) =
            state.prefix[l] * ops.input_mapping;
        ctx.suffix_los.middleCols(l * n_users, n_users) =
            state.suffix[l].adjoint() * stats.los_vectors;
        ctx.suffix_corr_beam.middleCols(l * n_users, n_users) =
            state.suffix[l].adjoint() * corr_beams;
    }
    return ctx;
}

cvec grad_D_from_context(int user, int layer, const GradientContext& ctx,
                         const ChannelStatistics& stats, const PowerAllocation& p,
                         int n_users)
{
    const cx inner = ctx.los_inner(user, user); // h_k^H G w_k
    const cvec a = ctx.prefix_beams.col(layer * n_users + user).conjugate();
    const cvec b = ctx.suffix_los.col(layer * n_users + user);
    return (p.powers(user) * stats.rician_factor[user] * inner) * a.cwiseProduct(b);
}

cvec grad_I_from_context(int user, int layer, const GradientContext& ctx,
                         const ChannelStatistics& stats, const PowerAllocation& p,
                         int n_users)
{
    const int n_atoms = static_cast<int>(ctx.beams.rows());
    cvec grad = cvec::Zero(n_atoms);
    for (int i = 0; i < n_users; ++i)
    {
        const cvec a = ctx.prefix_beams.col(layer * n_users + i).conjugate();
        grad += p.powers(i) * a.cwiseProduct(ctx.suffix_corr_beam.col(layer * n_users + i));
        if (i != user)
        {
            const cx inner = ctx.los_inner(user, i);
            grad += (p.powers(i) * stats.rician_factor[user] * inner) *
                    a.cwiseProduct(ctx.suffix_los.col(layer * n_users + user));
        }
    }
    return grad;
}

} // namespace

cvec grad_D(int user, int layer, const CascadeState& state, const PropagationOperators& ops,
            const ChannelStatistics& stats, const PowerAllocation& p)
{
    const GradientContext ctx = make_context(state, ops, stats);
    return grad_D_from_context(user, layer, ctx, stats, p, stats.num_users());
}

cvec grad_I(int user, int layer, const CascadeState& state, const PropagationOperators& ops,
            const ChannelStatistics& stats, const PowerAllocation& p)
{
    const GradientContext ctx = make_context(state, ops, stats);
    return grad_I_from_context(user, layer, ctx, stats, p, stats.num_users());
}

GradientBundle grad_objective(const CascadeState& state, const PropagationOperators& ops,
                              const ChannelStatistics& stats, const PowerAllocation& p)
{
    const int n_users = stats.num_users();
    const int num_layers = static_cast<int>(state.prefix.size());
    const int n_atoms = static_cast<int>(state.response.rows());
    const GradientContext ctx = make_context(state, ops, stats);
    const RateReport report = sinr_closed_form(state, ops, stats, p);
    const double log2e = 1.0 / std::log(2.0);

    GradientBundle bundle;
    bundle.layers.assign(num_layers, cvec::Zero(n_atoms));
#pragma omp parallel for schedule(static)
    for (int l = 0; l < num_layers; ++l)
    {
        cvec acc = cvec::Zero(n_atoms);
        for (int k = 0; k < n_users; ++k)
        {
            const cvec gd = grad_D_from_context(k, l, ctx, stats, p, n_users);
            const cvec gi = grad_I_from_context(k, l, ctx, stats, p, n_users);
            const double d = report.numerator(k);
            const double ik = report.denominator(k);
            // log2(e) * (I dD - D dI) / (I^2 (1+gamma)) with I^2(1+gamma) = I(I+D)
            acc += (log2e / (ik * (ik + d))) * (ik * gd - d * gi);
        }
        bundle.layers[l] = acc;
    }
    return bundle;
}

cvec project_unit_modulus(const cvec& u)
{
    cvec out(u.size());
    for (int n = 0; n < u.size(); ++n)
    {
        const double mag = std::abs(u(n));
        out(n) = mag > 0.0 ? u(n) / mag : cx(1.0, 0.0);
    }
    return out;
}

PhaseStepResult pga_step(const PhaseState& phases, const GradientBundle& bundle,
                         double current_objective, const LineSearchConfig& ls,
                         const PropagationOperators& ops, const ChannelStatistics& stats,
                         const PowerAllocation& p)
{
    const int num_layers = phases.num_layers();
    if (static_cast<int>(bundle.layers.size()) != num_layers)
        throw std::invalid_argument("pga_step: gradient bundle layer count mismatch");

    double mu = ls.initial_step;
    for (int m = 0; m <= ls.max_backtracks; ++m, mu *= ls.shrink)
    {
        PhaseState candidate = phases;
        double linear = 0.0;
        double dist2 = 0.0;
        for (int l = 0; l < num_layers; ++l)
        {
            candidate.phi[l] = project_unit_modulus(phases.phi[l] + mu * bundle.layers[l]);
            const cvec delta = candidate.phi[l] - phases.phi[l];
            linear += 2.0 * bundle.layers[l].dot(delta).real(); // dot() conjugates the lhs
            dist2 += delta.squaredNorm();
        }
        const double objective = evaluate_objective(candidate, ops, stats, p);
        const double quad = current_objective + linear - dist2 / mu;
        if (objective >= quad && objective >= current_objective)
            return {std::move(candidate), mu, objective, m};
    }
    return {phases, 0.0, current_objective, ls.max_backtracks};
}

PhaseOptResult optimize_phases(const PhaseState& initial, const PropagationOperators& ops,
                               const ChannelStatistics& stats, const PowerAllocation& p,
                               double tol, int max_iters, const LineSearchConfig& ls)
{
    PhaseOptResult result;
    result.phases = initial;
    result.phases.renormalize();

    double objective = evaluate_objective(result.phases, ops, stats, p);
    result.trajectory.push_back({0, objective, 0.0, 0});

    LineSearchConfig current_ls = ls;
    for (int iter = 1; iter <= max_iters; ++iter)
    {
        double step_taken = 0.0;
        int backtracks = 0;
        if (ls.layer_cyclic)
        {
            // one single-layer move per layer, recomposing between moves
            for (int l = 0; l < result.phases.num_layers(); ++l)
            {
                const CascadeState state = compose(result.phases, ops);
                GradientBundle bundle = grad_objective(state, ops, stats, p);
                for (int other = 0; other < result.phases.num_layers(); ++other)
                    if (other != l)
                        bundle.layers[other].setZero();
                PhaseStepResult step =
                    pga_step(result.phases, bundle, objective, current_ls, ops, stats, p);
                result.phases = std::move(step.phases);
                objective = step.objective;
                step_taken = std::max(step_taken, step.step);
                backtracks += step.backtracks;
            }
        }
        else
        {
            const CascadeState state = compose(result.phases, ops);
            const GradientBundle bundle = grad_objective(state, ops, stats, p);
            PhaseStepResult step =
                pga_step(result.phases, bundle, objective, current_ls, ops, stats, p);
            result.phases = std::move(step.phases);
            objective = step.objective;
            step_taken = step.step;
            backtracks = step.backtracks;
            if (ls.warm_start && step.step > 0.0)
                current_ls.initial_step = 2.0 * step.step;
        }

        const double previous = result.trajectory.back().objective;
        result.trajectory.push_back({iter, objective, step_taken, backtracks});
        if (step_taken == 0.0 || std::abs(objective - previous) < tol)
            break;
    }
    return result;
}

std::string phase_trajectory_csv(const std::vector<PhaseTrajectoryPoint>& trajectory)
{
    std::string csv = "iteration,objective,step_size,backtracks\n";
    char buf[128];
    for (const auto& pt : trajectory)
    {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%d\n", pt.iteration, pt.objective,
                      pt.step, pt.backtracks);
        csv += buf;
    }
    return csv;
}

} // namespace simwave
