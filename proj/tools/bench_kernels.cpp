// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------
//
// Compares the OpenMP kernels against the serial reference implementations:
// operator construction, cascade composition, closed-form SINR, and the
// Monte-Carlo SINR estimator.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "simwave/reference.hpp"

using namespace simwave;

namespace
{

template <typename F>
double time_ms(F&& fn, int repeats = 3)
{
    double best = 1e300;
    for (int r = 0; r < repeats; ++r)
    {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv)
{
    SimGeometry geom;
    geom.num_antennas = 8;
    geom.num_users = 8;
    geom.num_layers = 4;
    geom.atoms_per_row = argc > 1 ? std::atoi(argv[1]) : 10;
    geom.atoms_per_col = argc > 2 ? std::atoi(argv[2]) : 20;
    geom.sim_thickness = 5.0 * geom.wavelength;
    geom.validate();

    const int mc_samples = argc > 3 ? std::atoi(argv[3]) : 2000;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#endif
    std::printf("N=%d, L=%d, K=%d, N_t=%d, mc_samples=%d\n\n", geom.atoms_per_layer(),
                geom.num_layers, geom.num_users, geom.num_antennas, mc_samples);

    const double t_build_ref = time_ms([&] { (void)ref::build_operators(geom); });
    const double t_build_omp = time_ms([&] { (void)build_operators(geom); });
    std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n",
                "build_operators", t_build_ref, t_build_omp, t_build_ref / t_build_omp);

    const PropagationOperators ops = build_operators(geom);
    rng_t rng(42);
    const PhaseState phases = PhaseState::random(geom.num_layers, geom.atoms_per_layer(), rng);

    const double t_comp_ref = time_ms([&] { (void)ref::compose(phases, ops); });
    const double t_comp_omp = time_ms([&] { (void)compose(phases, ops); });
    std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", "compose",
                t_comp_ref, t_comp_omp, t_comp_ref / t_comp_omp);

    const UserLayout layout = drop_users(geom, 60.0, 80.0, 7);
    const std::vector<double> kappa(geom.num_users, 1.0);
    const ChannelStatistics stats =
        make_channel_statistics(geom, layout, kappa, noise_power_w(20e6, 0.0), 2.5);
    const CascadeState state = compose(phases, ops);
    const PowerAllocation p = PowerAllocation::uniform(geom.num_users, 1.0);

    const double t_cf_ref = time_ms([&] { (void)ref::sinr_closed_form(state, ops, stats, p); });
    const double t_cf_omp = time_ms([&] { (void)sinr_closed_form(state, ops, stats, p); });
    std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n",
                "sinr_closed_form", t_cf_ref, t_cf_omp, t_cf_ref / t_cf_omp);

    const double t_mc_ref =
        time_ms([&] { (void)ref::sinr_uatf_mc(state, ops, stats, p, mc_samples, 3); }, 1);
    const double t_mc_omp =
        time_ms([&] { (void)sinr_uatf_mc(state, ops, stats, p, mc_samples, 3); }, 1);
    std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", "sinr_uatf_mc",
                t_mc_ref, t_mc_omp, t_mc_ref / t_mc_omp);

    return 0;
}
