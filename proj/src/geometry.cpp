// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "simwave/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace simwave
{

void SimGeometry::validate() const
{
    if (num_antennas < 1 || num_users < 1 || num_layers < 1 ||
        atoms_per_row < 1 || atoms_per_col < 1)
        throw std::invalid_argument("SimGeometry: all counts must be positive");
    if (!(wavelength > 0.0) || !(sim_thickness > 0.0) || !(bs_height > 0.0))
        throw std::invalid_argument("SimGeometry: all lengths must be strictly positive");
    // user k is served by transmit antenna k (column k of the input mapping)
    if (num_users > num_antennas)
        throw std::invalid_argument("SimGeometry: need num_users <= num_antennas");
}

static void check_atom_index(int n, const SimGeometry& geom, const char* who)
{
    if (n < 1 || n > geom.atoms_per_layer())
        throw std::invalid_argument(std::string(who) + ": atom index out of range: " +
                                    std::to_string(n));
}

vec3 element_position(int n, const SimGeometry& geom)
{
    check_atom_index(n, geom, "element_position");
    const int i = (n - 1) % geom.atoms_per_row;
    const int j = (n - 1) / geom.atoms_per_row;
    const double d = geom.element_spacing();
    return {0.0, i * d, j * d};
}

double intra_layer_offset(int n, int n_tilde, const SimGeometry& geom)
{
    check_atom_index(n, geom, "intra_layer_offset");
    check_atom_index(n_tilde, geom, "intra_layer_offset");
    const int diff = std::abs(n - n_tilde);
    const double a = diff / geom.atoms_per_row;
    const double b = diff % geom.atoms_per_row;
    return geom.element_spacing() * std::sqrt(a * a + b * b);
}

double inter_layer_distance(int n, int n_tilde, const SimGeometry& geom)
{
    const double d = intra_layer_offset(n, n_tilde, geom);
    return std::hypot(geom.layer_spacing(), d);
}

double antenna_to_layer_distance(int m, int n_tilde, const SimGeometry& geom)
{
    if (m < 1 || m > geom.num_antennas)
        throw std::invalid_argument("antenna_to_layer_distance: antenna index out of range");
    check_atom_index(n_tilde, geom, "antenna_to_layer_distance");

    const double half = geom.wavelength / 2.0;
    const double row = (n_tilde - 1) % geom.atoms_per_row - (geom.atoms_per_row - 1) / 2.0;
    const double ant = m - (geom.num_antennas + 1) / 2.0;
    const double lateral = row * half - ant * half;
    const double col = std::ceil(static_cast<double>(n_tilde) / geom.atoms_per_row) -
                       (geom.atoms_per_col + 1) / 2.0;
    const double vertical2 = col * col * geom.wavelength * geom.wavelength / 4.0;
    const double ds = geom.layer_spacing();
    return std::sqrt(ds * ds + lateral * lateral + vertical2);
}

double obliquity_cosine(double distance_3d, const SimGeometry& geom)
{
    const double ds = geom.layer_spacing();
    if (distance_3d < ds)
        throw std::invalid_argument("obliquity_cosine: distance below layer spacing");
    return ds / distance_3d;
}

UserLayout drop_users(const SimGeometry& geom, double r_min, double r_max,
                      std::uint64_t rng_seed)
{
    if (!(r_min > 0.0) || r_max < r_min)
        throw std::invalid_argument("drop_users: need 0 < r_min <= r_max");

    rng_t rng(rng_seed);
    std::uniform_real_distribution<double> radius(r_min, r_max);
    std::uniform_real_distribution<double> azimuth(-pi / 2.0, pi / 2.0);

    UserLayout layout;
    layout.positions.reserve(geom.num_users);
    layout.distances.reserve(geom.num_users);
    for (int k = 0; k < geom.num_users; ++k)
    {
        const double r = radius(rng);
        const double phi = azimuth(rng);
        // x points away from the SIM, users on the ground H_BS below the center
        const vec3 p{r * std::cos(phi), r * std::sin(phi), -geom.bs_height};
        layout.positions.push_back(p);
        layout.distances.push_back(p.norm());
    }
    return layout;
}

double path_loss(double d_k, double wavelength, double alpha, double d_ref)
{
    if (!(d_k > 0.0))
        throw std::invalid_argument("path_loss: distance must be positive");
    const double c0 = wavelength / (4.0 * pi * d_ref);
    return c0 * c0 * std::pow(d_k / d_ref, -alpha);
}

} // namespace simwave
