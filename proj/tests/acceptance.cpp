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
// Acceptance suite: one check per release criterion, each printing a single
// [PASS]/[FAIL] line. argv[1] is the path to the simwave CLI binary, used by
// the end-to-end determinism check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "simwave/ao_driver.hpp"
#include "simwave/harness.hpp"
#include "simwave/io.hpp"

using namespace simwave;
namespace fs = std::filesystem;

namespace
{

int failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail)
{
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", index, name,
                detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TestScene
{
    SimGeometry geom;
    PropagationOperators ops;
    ChannelStatistics stats;
    PhaseState phases;
    CascadeState state;
    PowerAllocation p;
};

TestScene make_scene(int n_x, int n_y, int num_layers, int num_users, std::uint64_t seed)
{
    TestScene scene;
    scene.geom.num_antennas = num_users;
    scene.geom.num_users = num_users;
    scene.geom.num_layers = num_layers;
    scene.geom.atoms_per_row = n_x;
    scene.geom.atoms_per_col = n_y;
    scene.geom.sim_thickness = 5 * scene.geom.wavelength;
    scene.geom.validate();

    scene.ops = build_operators(scene.geom);
    const UserLayout layout = drop_users(scene.geom, 60.0, 80.0, seed);
    const std::vector<double> kappas(num_users, 1.0);
    scene.stats =
        make_channel_statistics(scene.geom, layout, kappas, noise_power_w(20e6, 0.0), 2.5);

    rng_t rng(seed + 1);
    scene.phases = PhaseState::random(num_layers, scene.geom.atoms_per_layer(), rng);
    scene.state = compose(scene.phases, scene.ops);
    scene.p = PowerAllocation::uniform(num_users, 1.0);
    return scene;
}

PhaseState random_unit_direction(int num_layers, int atoms, rng_t& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    PhaseState delta;
    double norm2 = 0.0;
    for (int l = 0; l < num_layers; ++l)
    {
        cvec v(atoms);
        for (int n = 0; n < atoms; ++n)
            v(n) = cx{g(rng), g(rng)};
        norm2 += v.squaredNorm();
        delta.phi.push_back(std::move(v));
    }
    for (auto& v : delta.phi)
        v /= std::sqrt(norm2);
    return delta;
}

PhaseState perturbed(const PhaseState& base, const PhaseState& delta, double eps)
{
    PhaseState out = base;
    for (int l = 0; l < base.num_layers(); ++l)
        out.phi[l] += eps * delta.phi[l];
    return out;
}

AOConfig desk_ao_config(std::uint64_t seed, int num_starts, int max_outer)
{
    AOConfig config;
    config.num_starts = num_starts;
    config.max_outer_iters = max_outer;
    config.inner_phase_iters = 15;
    config.master_seed = seed;
    return config;
}

// criterion 1: closed-form SINR vs the Monte-Carlo estimator, single-threaded
void check_proposition1()
{
    const auto t0 = std::chrono::steady_clock::now();
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    const TestScene scene = make_scene(4, 4, 2, 2, 2024);
    const RateReport cf = sinr_closed_form(scene.state, scene.ops, scene.stats, scene.p);
    const McSinrReport mc =
        sinr_uatf_mc(scene.state, scene.ops, scene.stats, scene.p, 100000, 9);
#ifdef _OPENMP
    omp_set_num_threads(saved);
#endif
    double worst_rel = 0.0, worst_sigma = 0.0;
    for (int k = 0; k < 2; ++k)
    {
        worst_rel = std::max(worst_rel, std::abs(mc.sinr(k) - cf.sinr(k)) / cf.sinr(k));
        worst_sigma =
            std::max(worst_sigma, std::abs(mc.sinr(k) - cf.sinr(k)) / mc.sinr_se(k));
    }
    const double elapsed = seconds_since(t0);
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "max rel err %.3e < 0.02, max deviation %.2f sigma < 3, %.1f s < 60 s",
                  worst_rel, worst_sigma, elapsed);
    report(1, "closed-form SINR matches the Monte-Carlo estimator",
           worst_rel < 0.02 && worst_sigma < 3.0 && elapsed < 60.0, detail);
}

// criterion 2: directional derivatives of D_k, I_k, and the full objective
void check_gradients()
{
    const auto t0 = std::chrono::steady_clock::now();
    const double eps = 1e-6;
    double worst = 0.0;
    rng_t dir_rng(5150);
    for (int instance = 0; instance < 20; ++instance)
    {
        const TestScene scene = make_scene(4, 2, 3, 2, 3000 + instance);
        const int atoms = scene.geom.atoms_per_layer();
        const GradientBundle bundle =
            grad_objective(scene.state, scene.ops, scene.stats, scene.p);
        const PhaseState delta = random_unit_direction(3, atoms, dir_rng);

        auto rate = [&](const PhaseState& phases) {
            return sinr_closed_form(compose(phases, scene.ops), scene.ops, scene.stats,
                                    scene.p);
        };
        const RateReport plus = rate(perturbed(scene.phases, delta, eps));
        const RateReport minus = rate(perturbed(scene.phases, delta, -eps));

        for (int k = 0; k < 2; ++k)
        {
            double lin_d = 0.0, lin_i = 0.0;
            for (int l = 0; l < 3; ++l)
            {
                lin_d += 2.0 *
                         grad_D(k, l, scene.state, scene.ops, scene.stats, scene.p)
                             .dot(delta.phi[l])
                             .real();
                lin_i += 2.0 *
                         grad_I(k, l, scene.state, scene.ops, scene.stats, scene.p)
                             .dot(delta.phi[l])
                             .real();
            }
            const double fd_d = (plus.numerator(k) - minus.numerator(k)) / (2.0 * eps);
            const double fd_i = (plus.denominator(k) - minus.denominator(k)) / (2.0 * eps);
            worst = std::max(worst, std::abs(fd_d - lin_d) / std::max(1.0, std::abs(fd_d)));
            worst = std::max(worst, std::abs(fd_i - lin_i) / std::max(1.0, std::abs(fd_i)));
        }

        double lin_f = 0.0;
        for (int l = 0; l < 3; ++l)
            lin_f += 2.0 * bundle.layers[l].dot(delta.phi[l]).real();
        const double fd_f = (plus.sum_se - minus.sum_se) / (2.0 * eps);
        worst = std::max(worst, std::abs(fd_f - lin_f) / std::max(1.0, std::abs(fd_f)));
    }
    const double elapsed = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max rel err %.3e < 1e-4, %.1f s < 10 s", worst,
                  elapsed);
    report(2, "Wirtinger gradients match finite differences", worst < 1e-4 && elapsed < 10.0,
           detail);
}

// criterion 3: no monotonicity violations across seeded phase and power runs
void check_monotone_ascent()
{
    int violations = 0;
    int steps = 0;
    for (int run = 0; run < 50; ++run)
    {
        const TestScene scene = make_scene(4, 2, 2, 2, 4000 + run);
        const PhaseOptResult phase_run = optimize_phases(
            scene.phases, scene.ops, scene.stats, scene.p, 1e-9, 20, LineSearchConfig{});
        for (std::size_t i = 1; i < phase_run.trajectory.size(); ++i, ++steps)
            if (phase_run.trajectory[i].objective < phase_run.trajectory[i - 1].objective)
                ++violations;

        const WmmseCoefficients coeffs =
            wmmse_coefficients(compose(phase_run.phases, scene.ops), scene.ops, scene.stats);
        const PowerOptResult power_run =
            optimize_powers(coeffs, scene.p, 1.0, 1e-10, 40);
        for (std::size_t i = 1; i < power_run.trajectory.size(); ++i, ++steps)
            if (power_run.trajectory[i].sum_se < power_run.trajectory[i - 1].sum_se)
                ++violations;
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "%d violations over %d accepted steps", violations,
                  steps);
    report(3, "phase and power iterations never decrease the sum SE", violations == 0, detail);
}

// criterion 4: WMMSE identities and the 2-user grid-search optimum
void check_wmmse_identities()
{
    double worst_mse = 0.0;
    double worst_budget = 0.0;
    double worst_gap = -1e300;
    rng_t rng(6021);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int rep = 0; rep < 20; ++rep)
    {
        const TestScene scene = make_scene(4, 2, 2, 2, 5000 + rep);
        const WmmseCoefficients coeffs =
            wmmse_coefficients(scene.state, scene.ops, scene.stats);

        rvec p(2);
        p << u(rng), u(rng);
        const rvec v = mmse_receiver(coeffs, p);
        const rvec e = mse(coeffs, p, v);
        for (int k = 0; k < 2; ++k)
            worst_mse = std::max(worst_mse,
                                 std::abs(e(k) - 1.0 / (1.0 + coeffs.sinr(k, p))));

        const PowerOptResult opt =
            optimize_powers(coeffs, PowerAllocation::uniform(2, 1.0), 1.0, 1e-12, 300);
        worst_budget = std::max(worst_budget, opt.allocation.powers.sum() - 1.0);

        double grid_best = -1e300;
        rvec q(2);
        for (int i = 0; i <= 200; ++i)
            for (int j = 0; j <= 200 - i; ++j)
            {
                q(0) = i / 200.0;
                q(1) = j / 200.0;
                grid_best = std::max(grid_best, sum_se_from_coefficients(coeffs, q));
            }
        worst_gap = std::max(worst_gap, grid_best - opt.trajectory.back().sum_se);
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "max |e - 1/(1+g)| %.2e < 1e-10, max grid gap %.2e < 1e-3, "
                  "max budget excess %.2e <= 1e-9",
                  worst_mse, worst_gap, worst_budget);
    report(4, "WMMSE identities and 2-user optimality hold",
           worst_mse < 1e-10 && worst_gap < 1e-3 && worst_budget <= 1e-9, detail);
}

SceneFactory atoms_factory(int num_layers, int num_users)
{
    return [=](int n_atoms, std::uint64_t drop_seed, PropagationOperators& ops,
               ChannelStatistics& stats) {
        const auto [n_x, n_y] = grid_for_atoms(n_atoms);
        TestScene scene = make_scene(n_x, n_y, num_layers, num_users, drop_seed);
        ops = std::move(scene.ops);
        stats = std::move(scene.stats);
        return num_layers;
    };
}

SceneFactory layers_factory(int n_atoms, int num_users)
{
    return [=](int num_layers, std::uint64_t drop_seed, PropagationOperators& ops,
               ChannelStatistics& stats) {
        const auto [n_x, n_y] = grid_for_atoms(n_atoms);
        TestScene scene = make_scene(n_x, n_y, num_layers, num_users, drop_seed);
        ops = std::move(scene.ops);
        stats = std::move(scene.stats);
        return num_layers;
    };
}

// criterion 5: mean sum SE strictly increases with the atom count
void check_atom_sweep()
{
    const auto t0 = std::chrono::steady_clock::now();
    const AOConfig config = desk_ao_config(71, 3, 12);
    const std::vector<SweepPoint> points =
        sweep(atoms_factory(2, 2), {16, 36, 64}, 20, config);
    const bool increasing = points[0].mean_sum_se < points[1].mean_sum_se &&
                            points[1].mean_sum_se < points[2].mean_sum_se;
    const double elapsed = seconds_since(t0);
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "mean SE %.3f < %.3f < %.3f over N in {16,36,64}, %.0f s < 900 s",
                  points[0].mean_sum_se, points[1].mean_sum_se, points[2].mean_sum_se,
                  elapsed);
    report(5, "sum SE grows with the number of meta-atoms", increasing && elapsed < 900.0,
           detail);
}

// criterion 6: layer gain positive at the start, saturating by L = 6
void check_layer_sweep()
{
    const auto t0 = std::chrono::steady_clock::now();
    const AOConfig config = desk_ao_config(72, 3, 12);
    const std::vector<SweepPoint> points =
        sweep(layers_factory(36, 2), {1, 2, 5, 6}, 20, config);
    const double se1 = points[0].mean_sum_se;
    const double se2 = points[1].mean_sum_se;
    const double se5 = points[2].mean_sum_se;
    const double se6 = points[3].mean_sum_se;
    const double gain12 = se2 - se1;
    const double gain56 = se6 - se5;
    const bool ok = gain12 > 0.0 && gain56 < gain12 && gain56 > -0.02 * se6;
    const double elapsed = seconds_since(t0);
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "SE(L=1..) %.3f %.3f %.3f %.3f; gain(1->2) %.3f > 0, gain(5->6) %.3f "
                  "saturated, %.0f s < 1200 s",
                  se1, se2, se5, se6, gain12, gain56, elapsed);
    report(6, "multi-layer gain saturates by L=6", ok && elapsed < 1200.0, detail);
}

// criterion 7: five random starts agree within a 5% relative spread
void check_multistart_spread()
{
    const TestScene scene = make_scene(6, 6, 2, 2, 7003);
    AOConfig config;
    config.tolerance = 1e-5;
    config.max_outer_iters = 130;
    config.num_starts = 5;
    config.master_seed = 1;
    const AOResult result = run_ao(scene.ops, scene.stats, 2, config);
    double lo = 1e300, hi = -1e300;
    bool all_converged = true;
    for (const AOStartResult& start : result.starts)
    {
        lo = std::min(lo, start.trajectory.back());
        hi = std::max(hi, start.trajectory.back());
        if (start.iterations >= config.max_outer_iters)
        {
            const auto& tr = start.trajectory;
            if (std::abs(tr.back() - tr[tr.size() - 2]) >= config.tolerance)
                all_converged = false;
        }
    }
    const double spread = (hi - lo) / hi;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "final SEs in [%.4f, %.4f], spread %.2f%% < 5%%",
                  lo, hi, 100.0 * spread);
    report(7, "all random starts converge to the same sum SE", all_converged && spread < 0.05,
           detail);
}

// criterion 8: empirical channel moments match the correlated-Rician model
void check_channel_moments()
{
    const TestScene scene = make_scene(4, 2, 2, 2, 8001);
    const int n = scene.geom.atoms_per_layer();
    const int draws = 100000;
    const int k = 0;
    const double beta = scene.stats.channel_gain[k];
    const double kappa = scene.stats.rician_factor[k];
    const cvec mean_model =
        std::sqrt(beta * kappa / (1.0 + kappa)) * scene.stats.los_vectors.col(k);
    const cmat cov_model = beta / (1.0 + kappa) * scene.stats.correlation;

    rng_t rng(8020);
    cvec mean = cvec::Zero(n);
    cmat cov = cmat::Zero(n, n);
    for (int s = 0; s < draws; ++s)
    {
        const cvec h = sample_channels(scene.stats, rng)[k];
        mean += h;
        const cvec d = h - mean_model;
        cov += d * d.adjoint();
    }
    mean /= double(draws);
    cov /= double(draws);

    const double mean_err = (mean - mean_model).norm() / mean_model.norm();
    const double cov_err = (cov - cov_model).norm() / cov_model.norm();
    char detail[128];
    std::snprintf(detail, sizeof(detail), "mean err %.3f%%, cov err %.3f%% (both < 5%%)",
                  100.0 * mean_err, 100.0 * cov_err);
    report(8, "sampled channel moments match the model", mean_err < 0.05 && cov_err < 0.05,
           detail);
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// criterion 9: identical CLI invocations emit byte-identical artifacts
void check_cli_determinism(const std::string& cli)
{
    const fs::path base = fs::temp_directory_path() / "simwave_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);

    const fs::path cfg_path = base / "run.json";
    std::ofstream(cfg_path) << R"({
        "geometry": {"N_t": 2, "K": 2, "L": 2, "N_x": 4, "N_y": 2},
        "optimizer": {"num_starts": 3, "max_outer_iters": 10, "inner_phase_iters": 15},
        "experiment": {"mode": "converge"},
        "master_seed": 11
    })";

    bool ran = true;
    for (const char* out : {"a", "b"})
    {
        const std::string cmd = "\"" + cli + "\" converge --config \"" + cfg_path.string() +
                                "\" --out \"" + (base / out).string() + "\" --threads 2";
        if (std::system(cmd.c_str()) != 0)
            ran = false;
    }

    bool identical = ran;
    std::string compared;
    if (ran)
        for (const char* name : {"converge.csv"})
        {
            const std::string a = read_file(base / "a" / name);
            const std::string b = read_file(base / "b" / name);
            if (a.empty() || a != b)
                identical = false;
            compared += std::string(name) + " ";
        }
    report(9, "repeated CLI runs are byte-identical",
           identical, ran ? "compared " + compared : "CLI invocation failed");
    fs::remove_all(base);
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 2)
    {
        std::fprintf(stderr, "usage: acceptance <path-to-simwave-cli>\n");
        return 2;
    }

    check_proposition1();
    check_gradients();
    check_monotone_ascent();
    check_wmmse_identities();
    check_atom_sweep();
    check_layer_sweep();
    check_multistart_spread();
    check_channel_moments();
    check_cli_determinism(argv[1]);

    if (failures > 0)
    {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
