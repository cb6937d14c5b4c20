// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_CASCADE_H
#define SIMWAVE_CASCADE_H

#include <cstdint>
#include <vector>

#include "simwave/propagation.hpp"
#include "simwave/types.hpp"

namespace simwave
{

// The decision variable: L unit-modulus phase vectors, one per layer.
struct PhaseState
{
    std::vector<cvec> phi; // phi[l], length N, |phi[l](n)| = 1

    int num_layers() const { return static_cast<int>(phi.size()); }

    static PhaseState zeros(int num_layers, int atoms_per_layer);
    static PhaseState random(int num_layers, int atoms_per_layer, rng_t& rng);

    // snaps every entry back onto the unit circle
    void renormalize();
};

// Composed wave-domain response G = Phi_L W^L ... Phi_2 W^2 Phi_1 plus the
// suffix products A_l = Phi_L W^L ... Phi_{l+1} W^{l+1} (A_L = I) and prefix
// products C_l = W^l Phi_{l-1} ... Phi_1 (C_1 = I) consumed by the gradient.
struct CascadeState
{
    cmat response; // G, N x N
    std::vector<cmat> suffix; // suffix[l] = A_{l+1} (0-based layer index)
    std::vector<cmat> prefix; // prefix[l] = C_{l+1}
};

// One forward and one backward pass; diagonal factors applied as row scalings.
CascadeState compose(const PhaseState& phases, const PropagationOperators& ops);

// G * W^1; column k is the end-to-end wave-domain beam for user k.
cmat effective_input_response(const CascadeState& state, const PropagationOperators& ops);

} // namespace simwave

#endif
