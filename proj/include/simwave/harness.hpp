// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_HARNESS_H
#define SIMWAVE_HARNESS_H

#include <string>

#include "simwave/config.hpp"
#include "simwave/metrics.hpp"

namespace simwave
{

struct Scene
{
    SimGeometry geometry;
    PropagationOperators operators;
    ChannelStatistics statistics;
};

// Builds the full scene for a config; drop_seed selects the user drop.
Scene build_scene(const RunConfig& config, std::uint64_t drop_seed);

// (N_x, N_y) with N_x the largest divisor of n_atoms not exceeding sqrt(n_atoms)
std::pair<int, int> grid_for_atoms(int n_atoms);

struct ValidationReport
{
    double mc_rel_err = 0.0;   // worst per-user closed-form vs Monte-Carlo mismatch
    double grad_rel_err = 0.0; // worst directional-derivative mismatch
    bool passed = false;
    std::string details;
};

// Runs the Monte-Carlo-vs-closed-form and gradient-vs-finite-difference
// oracles on the configured scene.
ValidationReport run_validation(const RunConfig& config);

// Executes one CLI mode; writes all artifacts under config.output.dir.
// Returns the process exit status.
int run_mode(const std::string& mode, const RunConfig& config);

// '#'-prefixed metadata header embedded at the top of every CSV artifact.
std::string artifact_header(const RunConfig& config);

} // namespace simwave

#endif
