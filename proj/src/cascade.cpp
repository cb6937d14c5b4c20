// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "simwave/cascade.hpp"

#include <cmath>
#include <stdexcept>

namespace simwave
{

PhaseState PhaseState::zeros(int num_layers, int atoms_per_layer)
{
    PhaseState s;
    s.phi.assign(num_layers, cvec::Ones(atoms_per_layer));
    return s;
}

PhaseState PhaseState::random(int num_layers, int atoms_per_layer, rng_t& rng)
{
    std::uniform_real_distribution<double> theta(0.0, 2.0 * pi);
    PhaseState s;
    s.phi.reserve(num_layers);
    for (int l = 0; l < num_layers; ++l)
    {
        cvec v(atoms_per_layer);
        for (int n = 0; n < atoms_per_layer; ++n)
            v(n) = std::exp(jimag * theta(rng));
        s.phi.push_back(std::move(v));
    }
    return s;
}

void PhaseState::renormalize()
{
    for (auto& v : phi)
        for (int n = 0; n < v.size(); ++n)
        {
            const double mag = std::abs(v(n));
            v(n) = mag > 0.0 ? v(n) / mag : cx(1.0, 0.0);
        }
}

CascadeState compose(const PhaseState& phases, const PropagationOperators& ops)
{
    const int num_layers = phases.num_layers();
    const int n_atoms = static_cast<int>(ops.layer_transfer.rows());
    if (num_layers < 1)
        throw std::invalid_argument("compose: need at least one layer");
    for (const auto& v : phases.phi)
        if (v.size() != n_atoms)
            throw std::invalid_argument("compose: phase vector dimension mismatch");

    CascadeState state;
    state.prefix.resize(num_layers);
    state.suffix.resize(num_layers);

    // forward pass: C_1 = I, C_l = W^l Phi_{l-1} C_{l-1}
    state.prefix[0] = cmat::Identity(n_atoms, n_atoms);
    for (int l = 1; l < num_layers; ++l)
        state.prefix[l] = ops.layer_transfer *
                          (phases.phi[l - 1].asDiagonal() * state.prefix[l - 1]);

    // backward pass: A_L = I, A_l = A_{l+1} Phi_{l+1} W^{l+1}
    state.suffix[num_layers - 1] = cmat::Identity(n_atoms, n_atoms);
    for (int l = num_layers - 2; l >= 0; --l)
        state.suffix[l] = (state.suffix[l + 1] * phases.phi[l + 1].asDiagonal()) *
                          ops.layer_transfer;

    // G = Phi_L * C_L as a row scaling
    state.response = phases.phi[num_layers - 1].asDiagonal() * state.prefix[num_layers - 1];
    return state;
}

cmat effective_input_response(const CascadeState& state, const PropagationOperators& ops)
{
    if (state.response.cols() != ops.input_mapping.rows())
        throw std::invalid_argument("effective_input_response: dimension mismatch");
    return state.response * ops.input_mapping;
}

} // namespace simwave
