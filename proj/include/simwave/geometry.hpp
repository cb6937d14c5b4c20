// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_GEOMETRY_H
#define SIMWAVE_GEOMETRY_H

#include <cstdint>
#include <vector>

#include "simwave/types.hpp"

namespace simwave
{

// Physical layout of the transmitter: antenna line array, L stacked metasurface
// layers of N_x x N_y meta-atoms at half-wavelength pitch, and the user drop zone.
// All lengths in meters, SI units throughout.
struct SimGeometry
{
    int num_antennas = 8;  // N_t
    int num_users = 8;     // K
    int num_layers = 4;    // L
    int atoms_per_row = 10; // N_x
    int atoms_per_col = 10; // N_y
    double wavelength = 0.15;      // lambda, 2 GHz carrier
    double sim_thickness = 0.75;   // T_SIM, default 5*lambda
    double bs_height = 10.0;       // H_BS

    int atoms_per_layer() const { return atoms_per_row * atoms_per_col; } // N
    double element_spacing() const { return wavelength / 2.0; }           // d_H = d_V
    double atom_area() const { return element_spacing() * element_spacing(); } // A_t
    double layer_spacing() const { return sim_thickness / num_layers; }   // d_SIM

    // throws std::invalid_argument if any dimension or length is invalid
    void validate() const;
};

struct UserLayout
{
    std::vector<vec3> positions; // K points, SIM center at the origin
    std::vector<double> distances; // d_k, 3-D distance from the SIM center
};

// In-plane position of meta-atom n (1-based) on a layer: [0, i*d_H, j*d_V]
// with i = mod(n-1, N_x), j = floor((n-1)/N_x).
vec3 element_position(int n, const SimGeometry& geom);

// In-plane offset between atoms n and ñ on adjacent layers,
// (lambda/2)*sqrt(floor(|n-ñ|/N_x)^2 + mod(|n-ñ|,N_x)^2).
double intra_layer_offset(int n, int n_tilde, const SimGeometry& geom);

// 3-D distance between atom n on layer l and atom ñ on layer l-1.
double inter_layer_distance(int n, int n_tilde, const SimGeometry& geom);

// 3-D distance from transmit antenna m to atom ñ on the first layer. The
// antennas sit on a horizontal line at the layer center with lambda/2 spacing.
double antenna_to_layer_distance(int m, int n_tilde, const SimGeometry& geom);

// cos of the angle between the layer normal and the propagation direction
double obliquity_cosine(double distance_3d, const SimGeometry& geom);

// Drops K users on the ground in front of the SIM: horizontal distance uniform
// in [r_min, r_max], azimuth uniform over the facing half-plane. Deterministic
// given the seed.
UserLayout drop_users(const SimGeometry& geom, double r_min, double r_max,
                      std::uint64_t rng_seed);

// beta_k = C0 * (d_k/d_ref)^(-alpha), C0 = (lambda/(4*pi*d_ref))^2
double path_loss(double d_k, double wavelength, double alpha, double d_ref = 1.0);

} // namespace simwave

#endif
