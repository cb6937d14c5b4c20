// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "simwave/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

using nlohmann::json;

namespace simwave
{

SimGeometry GeometryConfig::to_geometry() const
{
    constexpr double speed_of_light = 299792458.0;
    SimGeometry geom;
    geom.num_antennas = n_t;
    geom.num_users = k;
    geom.num_layers = l;
    geom.atoms_per_row = n_x;
    geom.atoms_per_col = n_y;
    geom.wavelength = speed_of_light / frequency_hz;
    geom.sim_thickness = t_sim_wavelengths * geom.wavelength;
    geom.bs_height = h_bs_m;
    geom.validate();
    return geom;
}

AOConfig OptimizerConfig::to_ao_config(std::uint64_t master_seed) const
{
    AOConfig ao;
    ao.tolerance = tolerance;
    ao.max_outer_iters = max_outer_iters;
    ao.num_starts = num_starts;
    ao.total_power = std::pow(10.0, (p_t_dbm - 30.0) / 10.0);
    ao.inner_phase_tol = inner_phase_tol;
    ao.inner_phase_iters = inner_phase_iters;
    ao.inner_power_tol = inner_power_tol;
    ao.inner_power_iters = inner_power_iters;
    ao.line_search.initial_step = ls_initial_step;
    ao.line_search.shrink = ls_shrink;
    ao.line_search.max_backtracks = ls_max_backtracks;
    ao.line_search.warm_start = ls_warm_start;
    ao.line_search.layer_cyclic = layer_cyclic;
    ao.master_seed = master_seed;
    return ao;
}

namespace
{

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw std::invalid_argument("config: " + path + ": " + what);
}

void reject_unknown(const json& block, const std::set<std::string>& known,
                    const std::string& path)
{
    for (const auto& [key, value] : block.items())
        if (!known.count(key))
            fail(path + "." + key, "unknown key");
}

template <typename T>
void read(const json& block, const char* key, T& out, const std::string& path)
{
    if (!block.contains(key))
        return;
    try
    {
        out = block.at(key).get<T>();
    }
    catch (const json::exception& e)
    {
        fail(path + "." + key, e.what());
    }
}

} // namespace

RunConfig parse_config(const std::string& json_text)
{
    json root;
    try
    {
        root = json::parse(json_text);
    }
    catch (const json::parse_error& e)
    {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!root.is_object())
        throw std::invalid_argument("config: top level must be an object");

    reject_unknown(root, {"geometry", "channel", "optimizer", "experiment", "output",
                          "master_seed"},
                   "$");

    RunConfig cfg;
    read(root, "master_seed", cfg.master_seed, "$");

    if (root.contains("geometry"))
    {
        const json& g = root["geometry"];
        reject_unknown(g, {"frequency_hz", "N_t", "K", "L", "N_x", "N_y",
                           "T_SIM_wavelengths", "H_BS_m", "r_min_m", "r_max_m", "alpha"},
                       "$.geometry");
        read(g, "frequency_hz", cfg.geometry.frequency_hz, "$.geometry");
        read(g, "N_t", cfg.geometry.n_t, "$.geometry");
        read(g, "K", cfg.geometry.k, "$.geometry");
        read(g, "L", cfg.geometry.l, "$.geometry");
        read(g, "N_x", cfg.geometry.n_x, "$.geometry");
        read(g, "N_y", cfg.geometry.n_y, "$.geometry");
        read(g, "T_SIM_wavelengths", cfg.geometry.t_sim_wavelengths, "$.geometry");
        read(g, "H_BS_m", cfg.geometry.h_bs_m, "$.geometry");
        read(g, "r_min_m", cfg.geometry.r_min_m, "$.geometry");
        read(g, "r_max_m", cfg.geometry.r_max_m, "$.geometry");
        read(g, "alpha", cfg.geometry.alpha, "$.geometry");
        if (!(cfg.geometry.frequency_hz > 0.0))
            fail("$.geometry.frequency_hz", "must be positive");
        if (!(cfg.geometry.r_min_m > 0.0) || cfg.geometry.r_max_m < cfg.geometry.r_min_m)
            fail("$.geometry.r_min_m", "need 0 < r_min_m <= r_max_m");
    }

    if (root.contains("channel"))
    {
        const json& c = root["channel"];
        reject_unknown(c, {"kappa", "noise_figure_db", "bandwidth_hz", "seed"}, "$.channel");
        read(c, "kappa", cfg.channel.kappa, "$.channel");
        read(c, "noise_figure_db", cfg.channel.noise_figure_db, "$.channel");
        read(c, "bandwidth_hz", cfg.channel.bandwidth_hz, "$.channel");
        read(c, "seed", cfg.channel.seed, "$.channel");
        if (cfg.channel.kappa < 0.0)
            fail("$.channel.kappa", "must be >= 0");
        if (!(cfg.channel.bandwidth_hz > 0.0))
            fail("$.channel.bandwidth_hz", "must be positive");
    }

    if (root.contains("optimizer"))
    {
        const json& o = root["optimizer"];
        reject_unknown(o, {"tolerance", "max_outer_iters", "num_starts", "P_T_dbm",
                           "inner_phase_tol", "inner_phase_iters", "inner_power_tol",
                           "inner_power_iters", "ls_initial_step", "ls_shrink",
                           "ls_max_backtracks", "ls_warm_start", "layer_cyclic"},
                       "$.optimizer");
        read(o, "tolerance", cfg.optimizer.tolerance, "$.optimizer");
        read(o, "max_outer_iters", cfg.optimizer.max_outer_iters, "$.optimizer");
        read(o, "num_starts", cfg.optimizer.num_starts, "$.optimizer");
        read(o, "P_T_dbm", cfg.optimizer.p_t_dbm, "$.optimizer");
        read(o, "inner_phase_tol", cfg.optimizer.inner_phase_tol, "$.optimizer");
        read(o, "inner_phase_iters", cfg.optimizer.inner_phase_iters, "$.optimizer");
        read(o, "inner_power_tol", cfg.optimizer.inner_power_tol, "$.optimizer");
        read(o, "inner_power_iters", cfg.optimizer.inner_power_iters, "$.optimizer");
        read(o, "ls_initial_step", cfg.optimizer.ls_initial_step, "$.optimizer");
        read(o, "ls_shrink", cfg.optimizer.ls_shrink, "$.optimizer");
        read(o, "ls_max_backtracks", cfg.optimizer.ls_max_backtracks, "$.optimizer");
        read(o, "ls_warm_start", cfg.optimizer.ls_warm_start, "$.optimizer");
        read(o, "layer_cyclic", cfg.optimizer.layer_cyclic, "$.optimizer");
        if (!(cfg.optimizer.tolerance > 0.0))
            fail("$.optimizer.tolerance", "must be positive");
        if (cfg.optimizer.num_starts < 1)
            fail("$.optimizer.num_starts", "must be >= 1");
        if (!(cfg.optimizer.ls_shrink > 0.0) || !(cfg.optimizer.ls_shrink < 1.0))
            fail("$.optimizer.ls_shrink", "must lie strictly inside (0,1)");
    }

    if (root.contains("experiment"))
    {
        const json& e = root["experiment"];
        reject_unknown(e, {"mode", "sweep_values", "drops", "mc_samples"}, "$.experiment");
        read(e, "mode", cfg.experiment.mode, "$.experiment");
        read(e, "sweep_values", cfg.experiment.sweep_values, "$.experiment");
        read(e, "drops", cfg.experiment.drops, "$.experiment");
        read(e, "mc_samples", cfg.experiment.mc_samples, "$.experiment");
        static const std::set<std::string> modes{"validate", "ao", "sweep-n", "sweep-l",
                                                "converge"};
        if (!modes.count(cfg.experiment.mode))
            fail("$.experiment.mode", "unknown mode '" + cfg.experiment.mode + "'");
        if (cfg.experiment.drops < 1)
            fail("$.experiment.drops", "must be >= 1");
        if (cfg.experiment.mc_samples < 1)
            fail("$.experiment.mc_samples", "must be >= 1");
    }

    if (root.contains("output"))
    {
        const json& o = root["output"];
        reject_unknown(o, {"dir", "dump_operators"}, "$.output");
        read(o, "dir", cfg.output.dir, "$.output");
        read(o, "dump_operators", cfg.output.dump_operators, "$.output");
    }

    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string resolved_config_json(const RunConfig& cfg)
{
    json root;
    root["master_seed"] = cfg.master_seed;
    root["geometry"] = {{"frequency_hz", cfg.geometry.frequency_hz},
                        {"N_t", cfg.geometry.n_t},
                        {"K", cfg.geometry.k},
                        {"L", cfg.geometry.l},
                        {"N_x", cfg.geometry.n_x},
                        {"N_y", cfg.geometry.n_y},
                        {"T_SIM_wavelengths", cfg.geometry.t_sim_wavelengths},
                        {"H_BS_m", cfg.geometry.h_bs_m},
                        {"r_min_m", cfg.geometry.r_min_m},
                        {"r_max_m", cfg.geometry.r_max_m},
                        {"alpha", cfg.geometry.alpha}};
    root["channel"] = {{"kappa", cfg.channel.kappa},
                       {"noise_figure_db", cfg.channel.noise_figure_db},
                       {"bandwidth_hz", cfg.channel.bandwidth_hz},
                       {"seed", cfg.channel.seed}};
    root["optimizer"] = {{"tolerance", cfg.optimizer.tolerance},
                         {"max_outer_iters", cfg.optimizer.max_outer_iters},
                         {"num_starts", cfg.optimizer.num_starts},
                         {"P_T_dbm", cfg.optimizer.p_t_dbm},
                         {"inner_phase_tol", cfg.optimizer.inner_phase_tol},
                         {"inner_phase_iters", cfg.optimizer.inner_phase_iters},
                         {"inner_power_tol", cfg.optimizer.inner_power_tol},
                         {"inner_power_iters", cfg.optimizer.inner_power_iters},
                         {"ls_initial_step", cfg.optimizer.ls_initial_step},
                         {"ls_shrink", cfg.optimizer.ls_shrink},
                         {"ls_max_backtracks", cfg.optimizer.ls_max_backtracks},
                         {"ls_warm_start", cfg.optimizer.ls_warm_start},
                         {"layer_cyclic", cfg.optimizer.layer_cyclic}};
    root["experiment"] = {{"mode", cfg.experiment.mode},
                          {"sweep_values", cfg.experiment.sweep_values},
                          {"drops", cfg.experiment.drops},
                          {"mc_samples", cfg.experiment.mc_samples}};
    root["output"] = {{"dir", cfg.output.dir},
                      {"dump_operators", cfg.output.dump_operators}};
    return root.dump(2);
}

} // namespace simwave
