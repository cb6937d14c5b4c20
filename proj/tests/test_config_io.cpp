// SPDX-License-Identifier: Apache-2.0
//
// simwave: stacked-metasurface wave-domain beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include <cstdio>
#include <filesystem>
#include <string>

#include <doctest.h>

#include "simwave/config.hpp"
#include "simwave/harness.hpp"
#include "simwave/io.hpp"

using namespace simwave;

namespace
{

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("parse_config: empty object yields all defaults")
{
    const RunConfig cfg = parse_config("{}");
    CHECK(cfg.geometry.n_t == 8);
    CHECK(cfg.geometry.k == 8);
    CHECK(cfg.geometry.l == 4);
    CHECK(cfg.geometry.n_x * cfg.geometry.n_y == 200);
    CHECK(cfg.geometry.frequency_hz == 2e9);
    CHECK(cfg.channel.kappa == 1.0);
    CHECK(cfg.channel.bandwidth_hz == 20e6);
    CHECK(cfg.optimizer.tolerance == 1e-5);
    CHECK(cfg.optimizer.max_outer_iters == 130);
    CHECK(cfg.optimizer.num_starts == 5);
    CHECK(cfg.optimizer.p_t_dbm == 30.0);
    CHECK(cfg.experiment.mode == "ao");
    CHECK(cfg.master_seed == 1);
}

TEST_CASE("parse_config reads nested values")
{
    const RunConfig cfg = parse_config(R"({
        "master_seed": 99,
        "geometry": {"N_t": 2, "K": 2, "L": 3, "N_x": 4, "N_y": 4, "alpha": 2.0},
        "channel": {"kappa": 0.5, "seed": 7},
        "optimizer": {"num_starts": 2, "P_T_dbm": 20.0},
        "experiment": {"mode": "sweep-n", "sweep_values": [16, 36], "drops": 4},
        "output": {"dir": "artifacts", "dump_operators": true}
    })");
    CHECK(cfg.master_seed == 99);
    CHECK(cfg.geometry.n_t == 2);
    CHECK(cfg.geometry.l == 3);
    CHECK(cfg.channel.kappa == 0.5);
    CHECK(cfg.channel.seed == 7);
    CHECK(cfg.optimizer.num_starts == 2);
    CHECK(cfg.experiment.sweep_values == std::vector<int>{16, 36});
    CHECK(cfg.experiment.drops == 4);
    CHECK(cfg.output.dir == "artifacts");
    CHECK(cfg.output.dump_operators);
}

TEST_CASE("parse_config rejects unknown keys with a path")
{
    try
    {
        parse_config(R"({"geometry": {"N_q": 3}})");
        FAIL("expected a schema error");
    }
    catch (const std::invalid_argument& e)
    {
        CHECK(std::string(e.what()).find("$.geometry.N_q") != std::string::npos);
    }
    CHECK_THROWS(parse_config(R"({"bogus": 1})"));
    CHECK_THROWS(parse_config(R"({"experiment": {"mode": "fly"}})"));
    CHECK_THROWS(parse_config("not json"));
    CHECK_THROWS(parse_config(R"({"optimizer": {"ls_shrink": 1.5}})"));
    CHECK_THROWS(parse_config(R"({"geometry": {"r_min_m": -1}})"));
}

TEST_CASE("resolved_config_json round-trips through parse_config")
{
    RunConfig cfg = parse_config("{}");
    cfg.geometry.n_x = 4;
    cfg.geometry.n_y = 4;
    cfg.optimizer.p_t_dbm = 24.0;
    cfg.experiment.mode = "converge";
    cfg.master_seed = 123;
    const std::string echoed = resolved_config_json(cfg);
    const RunConfig back = parse_config(echoed);
    CHECK(back.geometry.n_x == 4);
    CHECK(back.optimizer.p_t_dbm == 24.0);
    CHECK(back.experiment.mode == "converge");
    CHECK(back.master_seed == 123);
    CHECK(resolved_config_json(back) == echoed);
    // every block and default is present in the echo
    for (const char* key : {"frequency_hz", "T_SIM_wavelengths", "noise_figure_db",
                            "ls_initial_step", "mc_samples", "dump_operators"})
        CHECK(echoed.find(key) != std::string::npos);
}

TEST_CASE("GeometryConfig::to_geometry derives the wavelength")
{
    GeometryConfig gc;
    gc.n_x = 4;
    gc.n_y = 4;
    const SimGeometry geom = gc.to_geometry();
    CHECK(geom.wavelength == doctest::Approx(299792458.0 / 2e9));
    CHECK(geom.sim_thickness == doctest::Approx(5.0 * geom.wavelength));
    CHECK(geom.atoms_per_layer() == 16);
}

TEST_CASE("OptimizerConfig::to_ao_config converts dBm to Watts")
{
    OptimizerConfig oc;
    CHECK(oc.to_ao_config(5).total_power == doctest::Approx(1.0));
    oc.p_t_dbm = 20.0;
    const AOConfig ao = oc.to_ao_config(5);
    CHECK(ao.total_power == doctest::Approx(0.1));
    CHECK(ao.master_seed == 5);
    CHECK(ao.line_search.shrink == oc.ls_shrink);
}

TEST_CASE("load_config: missing file throws")
{
    CHECK_THROWS(load_config("/nonexistent/simwave.json"));
}

TEST_CASE("matrix dump round-trips bit exactly")
{
    const std::string path = temp_path("simwave_dump_test.bin");
    rng_t rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    const cmat m = cmat::NullaryExpr(5, 3, [&](Eigen::Index, Eigen::Index) {
        return cx{g(rng), g(rng)};
    });
    write_matrix_dump(path, m);
    const cmat back = read_matrix_dump(path);
    REQUIRE(back.rows() == 5);
    REQUIRE(back.cols() == 3);
    CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("matrix dump header is validated")
{
    const std::string path = temp_path("simwave_dump_bad.bin");
    write_matrix_dump(path, cmat::Identity(2, 2));

    // corrupt the magic
    FILE* f = std::fopen(path.c_str(), "r+b");
    REQUIRE(f != nullptr);
    const std::uint64_t zero = 0;
    std::fwrite(&zero, sizeof(zero), 1, f);
    std::fclose(f);
    CHECK_THROWS(read_matrix_dump(path));
    std::remove(path.c_str());

    CHECK_THROWS(read_matrix_dump("/nonexistent/simwave.bin"));
}

TEST_CASE("grid_for_atoms picks the widest balanced factorization")
{
    CHECK(grid_for_atoms(16) == std::pair<int, int>{4, 4});
    CHECK(grid_for_atoms(36) == std::pair<int, int>{6, 6});
    CHECK(grid_for_atoms(64) == std::pair<int, int>{8, 8});
    CHECK(grid_for_atoms(200) == std::pair<int, int>{10, 20});
    CHECK(grid_for_atoms(8) == std::pair<int, int>{2, 4});
    CHECK(grid_for_atoms(7) == std::pair<int, int>{1, 7});
}

TEST_CASE("artifact_header carries the seed and is comment-prefixed")
{
    RunConfig cfg = parse_config("{}");
    cfg.master_seed = 77;
    const std::string header = artifact_header(cfg);
    REQUIRE(!header.empty());
    CHECK(header[0] == '#');
    CHECK(header.find("77") != std::string::npos);
    std::size_t pos = 0;
    while ((pos = header.find('\n', pos)) != std::string::npos)
    {
        ++pos;
        if (pos < header.size())
            CHECK(header[pos] == '#');
    }
}

TEST_CASE("build_scene assembles a consistent scene")
{
    RunConfig cfg = parse_config(R"({
        "geometry": {"N_t": 2, "K": 2, "L": 2, "N_x": 4, "N_y": 2}
    })");
    const Scene scene = build_scene(cfg, 5);
    CHECK(scene.geometry.atoms_per_layer() == 8);
    CHECK(scene.operators.layer_transfer.rows() == 8);
    CHECK(scene.operators.input_mapping.cols() == 2);
    CHECK(scene.statistics.num_users() == 2);
    for (int k = 0; k < 2; ++k)
        CHECK(scene.statistics.rician_factor[k] == cfg.channel.kappa);
}

TEST_CASE("run_validation passes on a desk-scale configuration")
{
    RunConfig cfg = parse_config(R"({
        "geometry": {"N_t": 2, "K": 2, "L": 2, "N_x": 4, "N_y": 2},
        "experiment": {"mode": "validate", "mc_samples": 20000}
    })");
    const ValidationReport report = run_validation(cfg);
    CHECK(report.passed);
    CHECK(report.mc_rel_err < 0.02);
    CHECK(report.grad_rel_err < 1e-5);
    CHECK(!report.details.empty());
}
