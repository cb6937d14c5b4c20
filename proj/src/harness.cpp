// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "simwave/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <json.hpp>

#include "simwave/io.hpp"
#include "simwave/phase_optimizer.hpp"

namespace fs = std::filesystem;

namespace simwave
{

Scene build_scene(const RunConfig& config, std::uint64_t drop_seed)
{
    Scene scene;
    scene.geometry = config.geometry.to_geometry();
    const UserLayout layout = drop_users(scene.geometry, config.geometry.r_min_m,
                                         config.geometry.r_max_m, drop_seed);
    scene.operators = build_operators(scene.geometry);
    const std::vector<double> kappa(scene.geometry.num_users, config.channel.kappa);
    const double noise =
        noise_power_w(config.channel.bandwidth_hz, config.channel.noise_figure_db);
    scene.statistics = make_channel_statistics(scene.geometry, layout, kappa, noise,
                                               config.geometry.alpha);
    return scene;
}

std::pair<int, int> grid_for_atoms(int n_atoms)
{
    int nx = 1;
    for (int d = 1; d * d <= n_atoms; ++d)
        if (n_atoms % d == 0)
            nx = d;
    return {nx, n_atoms / nx};
}

namespace
{

double objective_at(const PhaseState& phases, const PropagationOperators& ops,
                    const ChannelStatistics& stats, const PowerAllocation& p)
{
    return sinr_closed_form(compose(phases, ops), ops, stats, p).sum_se;
}

std::string compact_config(const RunConfig& config)
{
    // the output block only says where artifacts land; keeping it out makes
    // headers identical across runs that differ solely in the --out directory
    nlohmann::json root = nlohmann::json::parse(resolved_config_json(config));
    root.erase("output");
    return root.dump();
}

std::string pad_columns_csv(const std::string& value_name,
                            const std::vector<std::vector<double>>& columns)
{
    std::size_t max_len = 0;
    for (const auto& col : columns)
        max_len = std::max(max_len, col.size());

    std::string csv = "iteration";
    for (std::size_t s = 1; s <= columns.size(); ++s)
        csv += "," + value_name + "_" + std::to_string(s);
    csv += "\n";
    char buf[64];
    for (std::size_t i = 0; i < max_len; ++i)
    {
        csv += std::to_string(i);
        for (const auto& col : columns)
        {
            // converged starts hold their final value
            const double v = i < col.size() ? col[i] : col.back();
            std::snprintf(buf, sizeof(buf), ",%.17g", v);
            csv += buf;
        }
        csv += "\n";
    }
    return csv;
}

std::vector<std::vector<double>> start_trajectories(const AOResult& result)
{
    std::vector<std::vector<double>> columns;
    columns.reserve(result.starts.size());
    for (const auto& start : result.starts)
        columns.push_back(start.trajectory);
    return columns;
}

const char* plot_script =
    R"(#!/usr/bin/env python3
"""Regenerates the sweep and convergence figures from the emitted CSV tables."""
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

out = sys.argv[1] if len(sys.argv) > 1 else "."

def load(name):
    path = os.path.join(out, name)
    return pd.read_csv(path, comment="#") if os.path.exists(path) else None

sweep_n = load("sweep_n.csv")
if sweep_n is not None:
    plt.figure()
    plt.plot(sweep_n["N"], sweep_n["mean_sum_se"], "o-")
    plt.xlabel("meta-atoms per layer N")
    plt.ylabel("sum SE [bits/s/Hz]")
    plt.grid(True)
    plt.savefig(os.path.join(out, "sweep_n.png"), dpi=150)

sweep_l = load("sweep_l.csv")
if sweep_l is not None:
    plt.figure()
    plt.plot(sweep_l["L"], sweep_l["mean_sum_se"], "s-")
    plt.xlabel("metasurface layers L")
    plt.ylabel("sum SE [bits/s/Hz]")
    plt.grid(True)
    plt.savefig(os.path.join(out, "sweep_l.png"), dpi=150)

for name in ("converge.csv", "ao_trajectories.csv"):
    conv = load(name)
    if conv is not None:
        plt.figure()
        for col in conv.columns[1:]:
            plt.plot(conv["iteration"], conv[col], label=col)
        plt.xlabel("outer iteration")
        plt.ylabel("sum SE [bits/s/Hz]")
        plt.legend()
        plt.grid(True)
        plt.savefig(os.path.join(out, name.replace(".csv", ".png")), dpi=150)
        break
)";

} // namespace

std::string artifact_header(const RunConfig& config)
{
    return "# simwave run artifact\n# seed: " + std::to_string(config.master_seed) +
           "\n# config: " + compact_config(config) + "\n";
}

ValidationReport run_validation(const RunConfig& config)
{
    const Scene scene = build_scene(config, stream_seed(config.channel.seed, 0xD0));
    const int num_layers = scene.geometry.num_layers;
    const AOConfig ao = config.optimizer.to_ao_config(config.master_seed);

    rng_t rng(stream_seed(config.master_seed, 0xF1));
    const PhaseState phases =
        PhaseState::random(num_layers, scene.geometry.atoms_per_layer(), rng);
    const PowerAllocation powers =
        PowerAllocation::uniform(scene.geometry.num_users, ao.total_power);
    const CascadeState state = compose(phases, scene.operators);

    ValidationReport report;
    char buf[256];

    // oracle 1: Monte-Carlo estimate of the UatF SINR vs the closed form
    const RateReport closed = sinr_closed_form(state, scene.operators, scene.statistics, powers);
    const McSinrReport mc =
        sinr_uatf_mc(state, scene.operators, scene.statistics, powers,
                     config.experiment.mc_samples, stream_seed(config.channel.seed, 0x3C));
    for (int k = 0; k < closed.sinr.size(); ++k)
    {
        const double rel = std::abs(closed.sinr(k) - mc.sinr(k)) / mc.sinr(k);
        report.mc_rel_err = std::max(report.mc_rel_err, rel);
    }
    std::snprintf(buf, sizeof(buf), "mc_rel_err %.3e (samples %d)\n", report.mc_rel_err,
                  config.experiment.mc_samples);
    report.details += buf;

    // oracle 2: central finite differences of the objective along random
    // directions vs the closed-form conjugate gradient
    const GradientBundle bundle =
        grad_objective(state, scene.operators, scene.statistics, powers);
    const double eps = 1e-6;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial)
    {
        PhaseState plus = phases;
        PhaseState minus = phases;
        double analytic = 0.0;
        for (int l = 0; l < num_layers; ++l)
        {
            cvec delta(phases.phi[l].size());
            for (int n = 0; n < delta.size(); ++n)
                delta(n) = cx(gauss(rng), gauss(rng));
            delta /= delta.norm();
            plus.phi[l] = phases.phi[l] + eps * delta;
            minus.phi[l] = phases.phi[l] - eps * delta;
            analytic += 2.0 * bundle.layers[l].dot(delta).real();
        }
        const double fd = (objective_at(plus, scene.operators, scene.statistics, powers) -
                           objective_at(minus, scene.operators, scene.statistics, powers)) /
                          (2.0 * eps);
        const double rel = std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-300);
        report.grad_rel_err = std::max(report.grad_rel_err, rel);
    }
    std::snprintf(buf, sizeof(buf), "grad_rel_err %.3e (eps %.1e, 5 directions)\n",
                  report.grad_rel_err, eps);
    report.details += buf;

    report.passed = report.mc_rel_err < 0.02 && report.grad_rel_err < 1e-5;
    return report;
}

int run_mode(const std::string& mode, const RunConfig& config)
{
    fs::create_directories(config.output.dir);
    const auto artifact = [&](const std::string& name) {
        return (fs::path(config.output.dir) / name).string();
    };
    write_text_file(artifact("resolved_config.json"), resolved_config_json(config) + "\n");
    write_text_file(artifact("plot_results.py"), plot_script);

    const AOConfig ao_config = config.optimizer.to_ao_config(
        stream_seed(config.master_seed, 0xA0));

    if (config.output.dump_operators)
    {
        const Scene scene = build_scene(config, stream_seed(config.channel.seed, 0xD0));
        write_matrix_dump(artifact("W1.bin"), scene.operators.input_mapping);
        write_matrix_dump(artifact("W_layer.bin"), scene.operators.layer_transfer);
        write_matrix_dump(artifact("R.bin"), scene.statistics.correlation);
    }

    if (mode == "validate")
    {
        const ValidationReport report = run_validation(config);
        write_text_file(artifact("validate.txt"), artifact_header(config) + report.details);
        std::cout << report.details;
        std::cout << (report.passed ? "validate: PASS (mc_rel_err < 0.02, grad_rel_err < 1e-5)"
                                    : "validate: FAIL")
                  << "\n";
        return report.passed ? 0 : 1;
    }

    if (mode == "ao" || mode == "converge")
    {
        const Scene scene = build_scene(config, stream_seed(config.channel.seed, 0xD0));
        const AOResult result = run_ao(scene.operators, scene.statistics,
                                       scene.geometry.num_layers, ao_config);

        const std::string trajectories =
            artifact_header(config) + pad_columns_csv("se_start", start_trajectories(result));
        if (mode == "converge")
        {
            write_text_file(artifact("converge.csv"), trajectories);
        }
        else
        {
            write_text_file(artifact("ao_trajectories.csv"), trajectories);
            const RateReport report =
                sinr_closed_form(compose(result.best_phases, scene.operators), scene.operators,
                                 scene.statistics, result.best_powers);
            std::string csv = artifact_header(config);
            csv += "run_id,N,L,K,P_T_dbm,seed";
            for (int k = 1; k <= scene.geometry.num_users; ++k)
                csv += ",gamma_" + std::to_string(k);
            csv += ",sum_se\n";
            csv += rate_report_csv_row("ao", scene.geometry.atoms_per_layer(),
                                       scene.geometry.num_layers, scene.geometry.num_users,
                                       config.optimizer.p_t_dbm, config.master_seed, report) +
                   "\n";
            write_text_file(artifact("rate_report.csv"), csv);
        }
        std::cout << "best sum SE: " << result.best_sum_se << " bits/s/Hz (start "
                  << result.best_start + 1 << ")\n";
        return 0;
    }

    if (mode == "sweep-n" || mode == "sweep-l")
    {
        if (config.experiment.sweep_values.empty())
        {
            std::cerr << "simwave: experiment.sweep_values must be set for " << mode << "\n";
            return 2;
        }
        const bool over_atoms = mode == "sweep-n";
        SceneFactory factory = [&](int axis_value, std::uint64_t drop_seed,
                                   PropagationOperators& ops, ChannelStatistics& stats) {
            RunConfig local = config;
            if (over_atoms)
            {
                const auto [nx, ny] = grid_for_atoms(axis_value);
                local.geometry.n_x = nx;
                local.geometry.n_y = ny;
            }
            else
            {
                local.geometry.l = axis_value;
            }
            Scene scene = build_scene(local, drop_seed);
            ops = std::move(scene.operators);
            stats = std::move(scene.statistics);
            return local.geometry.l;
        };
        AOConfig sweep_config = ao_config;
        sweep_config.master_seed = config.master_seed;
        const auto points = sweep(factory, config.experiment.sweep_values,
                                  config.experiment.drops, sweep_config);
        const std::string name = over_atoms ? "sweep_n.csv" : "sweep_l.csv";
        write_text_file(artifact(name),
                        artifact_header(config) + sweep_csv(over_atoms ? "N" : "L", points));
        for (const auto& pt : points)
            std::cout << (over_atoms ? "N=" : "L=") << pt.axis_value
                      << " mean sum SE: " << pt.mean_sum_se << " bits/s/Hz\n";
        return 0;
    }

    std::cerr << "simwave: unknown mode '" << mode << "'\n";
    return 2;
}

} // namespace simwave
