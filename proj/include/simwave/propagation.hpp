// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_PROPAGATION_H
#define SIMWAVE_PROPAGATION_H

#include <vector>

#include "simwave/geometry.hpp"
#include "simwave/types.hpp"

namespace simwave
{

// Fixed propagation matrices of the stack. The inter-layer geometry is the
// same for every layer l >= 2, so a single N x N transfer matrix is stored
// and shared.
struct PropagationOperators
{
    cmat layer_transfer; // W^l, N x N, identical for l = 2..L
    cmat input_mapping;  // W^1, N x N_t, column k is w^1_k
};

// Per-user large-scale statistics plus the shared spatial correlation of the
// last layer. correlation_sqrt is any factor S with S*S^H = R.
struct ChannelStatistics
{
    std::vector<double> rician_factor; // kappa_k >= 0
    std::vector<double> channel_gain;  // beta_k > 0
    std::vector<double> noise_variance; // sigma_k^2, Watts
    cmat los_vectors;   // N x K, column k is h_{k,LoS}, unit-modulus entries
    cmat correlation;   // R, N x N Hermitian PSD, unit diagonal
    cmat correlation_sqrt; // S

    int num_users() const { return static_cast<int>(rician_factor.size()); }
};

// Rayleigh-Sommerfeld diffraction coefficient between two meta-atoms:
// (A_t*cos_x/r) * (1/(2*pi*r) - j/lambda) * exp(j*2*pi*r/lambda)
cx diffraction_coefficient(double atom_area, double cos_x, double r, double wavelength);

// Builds the shared layer transfer matrix and the antenna-to-first-layer mapping.
PropagationOperators build_operators(const SimGeometry& geom);

// [R]_{ñ,n} = sinc(2*||u_n - u_ñ||/lambda), sinc(t) = sin(pi t)/(pi t)
cmat correlation_matrix(const SimGeometry& geom);

// Eigendecomposition factor S with S*S^H = R; eigenvalues clipped at zero
// (the sinc kernel is rank-deficient at half-wavelength spacing).
cmat correlation_factor(const cmat& correlation);

// Spherical-wavefront steering vector from the last-layer atoms to the user:
// entry n is exp(-j*2*pi*r_{n,k}/lambda), with the grid centered at the origin.
cvec los_vector(const vec3& user_position, const SimGeometry& geom);

// Assembles per-user statistics for a dropped layout.
ChannelStatistics make_channel_statistics(const SimGeometry& geom,
                                          const UserLayout& users,
                                          const std::vector<double>& rician_factor,
                                          double noise_variance_w,
                                          double path_loss_exponent);

// One correlated-Rician realization per user:
// h_k = sqrt(beta_k)*(sqrt(kappa/(1+kappa))*h_LoS + sqrt(1/(1+kappa))*S*z)
std::vector<cvec> sample_channels(const ChannelStatistics& stats, rng_t& rng);

// Thermal noise power in Watts: -174 dBm/Hz over the bandwidth plus noise figure.
double noise_power_w(double bandwidth_hz, double noise_figure_db);

} // namespace simwave

#endif
