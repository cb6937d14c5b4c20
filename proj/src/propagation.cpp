// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "simwave/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace simwave
{

cx diffraction_coefficient(double atom_area, double cos_x, double r, double wavelength)
{
    if (!(r > 0.0))
        throw std::invalid_argument("diffraction_coefficient: distance must be positive");
    const cx radial(1.0 / (2.0 * pi * r), -1.0 / wavelength);
    const cx phase = std::exp(jimag * (2.0 * pi * r / wavelength));
    return (atom_area * cos_x / r) * radial * phase;
}

PropagationOperators build_operators(const SimGeometry& geom)
{
    geom.validate();
    const int n_atoms = geom.atoms_per_layer();
    const int n_tx = geom.num_antennas;
    const double area = geom.atom_area();
    const double lambda = geom.wavelength;

    PropagationOperators ops;
    ops.layer_transfer.resize(n_atoms, n_atoms);
    ops.input_mapping.resize(n_atoms, n_tx);

#pragma omp parallel for schedule(static)
    for (int col = 0; col < n_atoms; ++col)
    {
        for (int row = 0; row < n_atoms; ++row)
        {
            const double r = inter_layer_distance(row + 1, col + 1, geom);
            const double c = obliquity_cosine(r, geom);
            ops.layer_transfer(row, col) = diffraction_coefficient(area, c, r, lambda);
        }
    }

#pragma omp parallel for schedule(static)
    for (int m = 0; m < n_tx; ++m)
    {
        for (int row = 0; row < n_atoms; ++row)
        {
            const double r = antenna_to_layer_distance(m + 1, row + 1, geom);
            const double c = obliquity_cosine(r, geom);
            ops.input_mapping(row, m) = diffraction_coefficient(area, c, r, lambda);
        }
    }
    return ops;
}

static double sinc(double t)
{
    if (t == 0.0)
        return 1.0;
    return std::sin(pi * t) / (pi * t);
}

cmat correlation_matrix(const SimGeometry& geom)
{
    const int n_atoms = geom.atoms_per_layer();
    cmat corr(n_atoms, n_atoms);
#pragma omp parallel for schedule(static)
    for (int col = 0; col < n_atoms; ++col)
    {
        const vec3 u_col = element_position(col + 1, geom);
        for (int row = 0; row < n_atoms; ++row)
        {
            const vec3 u_row = element_position(row + 1, geom);
            corr(row, col) = sinc(2.0 * (u_row - u_col).norm() / geom.wavelength);
        }
    }
    return corr;
}

cmat correlation_factor(const cmat& correlation)
{
    Eigen::SelfAdjointEigenSolver<cmat> eig(correlation);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("correlation_factor: eigendecomposition failed");
    rvec ev = eig.eigenvalues();
    for (int i = 0; i < ev.size(); ++i)
    {
        if (ev(i) < -1e-12 * ev.cwiseAbs().maxCoeff())
            throw std::runtime_error("correlation_factor: matrix is not PSD");
        ev(i) = std::max(ev(i), 0.0);
    }
    return eig.eigenvectors() * ev.cwiseSqrt().asDiagonal();
}

cvec los_vector(const vec3& user_position, const SimGeometry& geom)
{
    const int n_atoms = geom.atoms_per_layer();
    // grid center offset so the SIM aperture is centered at the origin
    const vec3 center{0.0,
                      (geom.atoms_per_row - 1) / 2.0 * geom.element_spacing(),
                      (geom.atoms_per_col - 1) / 2.0 * geom.element_spacing()};
    cvec h(n_atoms);
    for (int n = 0; n < n_atoms; ++n)
    {
        const vec3 atom = element_position(n + 1, geom) - center;
        const double r = (user_position - atom).norm();
        h(n) = std::exp(-jimag * (2.0 * pi * r / geom.wavelength));
    }
    return h;
}

ChannelStatistics make_channel_statistics(const SimGeometry& geom,
                                          const UserLayout& users,
                                          const std::vector<double>& rician_factor,
                                          double noise_variance_w,
                                          double path_loss_exponent)
{
    const int n_users = geom.num_users;
    if (static_cast<int>(users.positions.size()) != n_users ||
        static_cast<int>(rician_factor.size()) != n_users)
        throw std::invalid_argument("make_channel_statistics: user count mismatch");

    ChannelStatistics stats;
    stats.rician_factor = rician_factor;
    stats.channel_gain.resize(n_users);
    stats.noise_variance.assign(n_users, noise_variance_w);
    stats.los_vectors.resize(geom.atoms_per_layer(), n_users);
    for (int k = 0; k < n_users; ++k)
    {
        stats.channel_gain[k] =
            path_loss(users.distances[k], geom.wavelength, path_loss_exponent);
        stats.los_vectors.col(k) = los_vector(users.positions[k], geom);
    }
    stats.correlation = correlation_matrix(geom);
    stats.correlation_sqrt = correlation_factor(stats.correlation);
    return stats;
}

std::vector<cvec> sample_channels(const ChannelStatistics& stats, rng_t& rng)
{
    const int n_atoms = static_cast<int>(stats.correlation.rows());
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

    std::vector<cvec> channels;
    channels.reserve(stats.num_users());
    cvec z(n_atoms);
    for (int k = 0; k < stats.num_users(); ++k)
    {
        for (int n = 0; n < n_atoms; ++n)
            z(n) = cx(gauss(rng), gauss(rng));
        const double kappa = stats.rician_factor[k];
        const double los_w = std::sqrt(kappa / (1.0 + kappa));
        const double nlos_w = std::sqrt(1.0 / (1.0 + kappa));
        channels.push_back(std::sqrt(stats.channel_gain[k]) *
                           (los_w * stats.los_vectors.col(k) +
                            nlos_w * (stats.correlation_sqrt * z)));
    }
    return channels;
}

double noise_power_w(double bandwidth_hz, double noise_figure_db)
{
    const double dbm = -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

} // namespace simwave
