// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_TYPES_H
#define SIMWAVE_TYPES_H

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace simwave
{

using cx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;
using vec3 = Eigen::Vector3d;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cx jimag{0.0, 1.0};

// splitmix64, used to derive independent RNG streams from (seed, index...) tuples
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97f4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0)
{
    return mix64(mix64(master ^ mix64(a)) ^ mix64(b + 0x517CC1B727220A95ULL));
}

using rng_t = std::mt19937_64;

} // namespace simwave

#endif
