// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef SIMWAVE_CONFIG_H
#define SIMWAVE_CONFIG_H

#include <cstdint>
#include <string>
#include <vector>

#include "simwave/ao_driver.hpp"
#include "simwave/geometry.hpp"

namespace simwave
{

struct GeometryConfig
{
    double frequency_hz = 2e9;
    int n_t = 8;
    int k = 8;
    int l = 4;
    int n_x = 10;
    int n_y = 20;
    double t_sim_wavelengths = 5.0;
    double h_bs_m = 10.0;
    double r_min_m = 60.0;
    double r_max_m = 80.0;
    double alpha = 2.5;

    SimGeometry to_geometry() const;
};

struct ChannelConfig
{
    double kappa = 1.0;
    double noise_figure_db = 0.0;
    double bandwidth_hz = 20e6;
    std::uint64_t seed = 1;
};

struct OptimizerConfig
{
    double tolerance = 1e-5;
    int max_outer_iters = 130;
    int num_starts = 5;
    double p_t_dbm = 30.0;
    double inner_phase_tol = 1e-6;
    int inner_phase_iters = 50;
    double inner_power_tol = 1e-8;
    int inner_power_iters = 50;
    double ls_initial_step = 1.0;
    double ls_shrink = 0.5;
    int ls_max_backtracks = 30;
    bool ls_warm_start = true;
    bool layer_cyclic = false;

    AOConfig to_ao_config(std::uint64_t master_seed) const;
};

struct ExperimentConfig
{
    std::string mode = "ao";
    std::vector<int> sweep_values;
    int drops = 1;
    int mc_samples = 100000;
};

struct OutputConfig
{
    std::string dir = "out";
    bool dump_operators = false;
};

struct RunConfig
{
    GeometryConfig geometry;
    ChannelConfig channel;
    OptimizerConfig optimizer;
    ExperimentConfig experiment;
    OutputConfig output;
    std::uint64_t master_seed = 1;
};

// Parses and schema-validates the JSON run configuration. Unknown keys are
// rejected with a key-path in the message.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Full resolved configuration, every applied default included.
std::string resolved_config_json(const RunConfig& config);

} // namespace simwave

#endif
