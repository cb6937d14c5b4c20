// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "simwave/reference.hpp"

#include <cmath>

namespace simwave::ref
{

PropagationOperators build_operators(const SimGeometry& geom)
{
    geom.validate();
    const int n_atoms = geom.atoms_per_layer();
    PropagationOperators ops;
    ops.layer_transfer.resize(n_atoms, n_atoms);
    ops.input_mapping.resize(n_atoms, geom.num_antennas);
    for (int col = 0; col < n_atoms; ++col)
        for (int row = 0; row < n_atoms; ++row)
        {
            const double r = inter_layer_distance(row + 1, col + 1, geom);
            ops.layer_transfer(row, col) =
                diffraction_coefficient(geom.atom_area(), obliquity_cosine(r, geom), r,
                                        geom.wavelength);
        }
    for (int m = 0; m < geom.num_antennas; ++m)
        for (int row = 0; row < n_atoms; ++row)
        {
            const double r = antenna_to_layer_distance(m + 1, row + 1, geom);
            ops.input_mapping(row, m) =
                diffraction_coefficient(geom.atom_area(), obliquity_cosine(r, geom), r,
                                        geom.wavelength);
        }
    return ops;
}

CascadeState compose(const PhaseState& phases, const PropagationOperators& ops)
{
    const int num_layers = phases.num_layers();
    const int n_atoms = static_cast<int>(ops.layer_transfer.rows());

    // explicit factor list Phi_L, W^L, Phi_{L-1}, ..., W^2, Phi_1
    std::vector<cmat> factors;
    factors.reserve(2 * num_layers - 1);
    for (int l = num_layers - 1; l >= 0; --l)
    {
        factors.emplace_back(phases.phi[l].asDiagonal());
        if (l > 0)
            factors.push_back(ops.layer_transfer);
    }

    auto product = [&](int first, int last) {
        cmat out = cmat::Identity(n_atoms, n_atoms);
        for (int f = first; f < last; ++f)
            out = out * factors[f];
        return out;
    };

    CascadeState state;
    state.response = product(0, static_cast<int>(factors.size()));
    state.prefix.resize(num_layers);
    state.suffix.resize(num_layers);
    for (int l = 0; l < num_layers; ++l)
    {
        // Phi_{l+1} (1-based) sits at factor index 2*(L-1-l)
        const int pos = 2 * (num_layers - 1 - l);
        state.suffix[l] = product(0, pos);
        state.prefix[l] = product(pos + 1, static_cast<int>(factors.size()));
    }
    return state;
}

double trace_term_explicit(const cmat& response, const cvec& input_column,
                           const cmat& correlation)
{
    const cvec beam = response * input_column;
    const cmat outer = beam * beam.adjoint();
    return (outer * correlation).trace().real();
}

RateReport sinr_closed_form(const CascadeState& state, const PropagationOperators& ops,
                            const ChannelStatistics& stats, const PowerAllocation& p)
{
    const int n_users = stats.num_users();
    RateReport report;
    report.sinr.resize(n_users);
    report.numerator.resize(n_users);
    report.denominator.resize(n_users);
    report.per_user_se.resize(n_users);
    for (int k = 0; k < n_users; ++k)
    {
        const double kappa = stats.rician_factor[k];
        const cvec beam_k = state.response * ops.input_mapping.col(k);
        const double direct = std::norm((stats.los_vectors.col(k).adjoint() * beam_k).value());
        double interference = 0.0;
        for (int i = 0; i < n_users; ++i)
        {
            const cvec beam_i = state.response * ops.input_mapping.col(i);
            interference += p.powers(i) * trace_term_explicit(state.response,
                                                              ops.input_mapping.col(i),
                                                              stats.correlation);
            if (i != k)
                interference +=
                    p.powers(i) * kappa *
                    std::norm((stats.los_vectors.col(k).adjoint() * beam_i).value());
        }
        interference += stats.noise_variance[k] * (1.0 + kappa) / stats.channel_gain[k];
        report.numerator(k) = p.powers(k) * kappa * direct;
        report.denominator(k) = interference;
        report.sinr(k) = report.numerator(k) / interference;
        report.per_user_se(k) = std::log2(1.0 + report.sinr(k));
    }
    report.sum_se = report.per_user_se.sum();
    return report;
}

rvec sinr_uatf_mc(const CascadeState& state, const PropagationOperators& ops,
                  const ChannelStatistics& stats, const PowerAllocation& p,
                  int num_samples, std::uint64_t seed)
{
    const int n_users = stats.num_users();
    const cmat beams = state.response * ops.input_mapping;
    rng_t rng(seed);

    cmat mean_sum = cmat::Zero(n_users, n_users);
    rmat power_sum = rmat::Zero(n_users, n_users);
    for (int s = 0; s < num_samples; ++s)
    {
        const auto channels = sample_channels(stats, rng);
        for (int k = 0; k < n_users; ++k)
            for (int i = 0; i < n_users; ++i)
            {
                const cx inner = (channels[k].adjoint() * beams.col(i)).value();
                mean_sum(k, i) += inner;
                power_sum(k, i) += std::norm(inner);
            }
    }

    rvec gamma(n_users);
    for (int k = 0; k < n_users; ++k)
    {
        const double desired = std::norm(mean_sum(k, k) / double(num_samples));
        double denom = -p.powers(k) * desired + stats.noise_variance[k];
        for (int i = 0; i < n_users; ++i)
            denom += p.powers(i) * power_sum(k, i) / num_samples;
        gamma(k) = p.powers(k) * desired / denom;
    }
    return gamma;
}

} // namespace simwave::ref
