// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include <cstdlib>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "simwave/harness.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"simwave: stacked-metasurface downlink beamforming simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;

    const std::vector<std::string> modes{"validate", "ao", "sweep-n", "sweep-l", "converge"};
    for (const auto& mode : modes)
    {
        CLI::App* sub = app.add_subcommand(mode);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed, "master seed (overrides config)")
            ->each([&seed_set](const std::string&) { seed_set = true; });
        sub->add_option("--threads", threads, "worker thread count");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string mode = app.get_subcommands().front()->get_name();

    if (threads == 0)
        if (const char* env = std::getenv("SIMWAVE_THREADS"))
            threads = std::atoi(env);
#ifdef _OPENMP
    if (threads > 0)
        omp_set_num_threads(threads);
#endif

    try
    {
        simwave::RunConfig config = simwave::load_config(config_path);
        if (seed_set)
            config.master_seed = seed;
        if (!out_dir.empty())
            config.output.dir = out_dir;
        return simwave::run_mode(mode, config);
    }
    catch (const std::exception& e)
    {
        std::cerr << "simwave: " << e.what() << "\n";
        return 2;
    }
}
