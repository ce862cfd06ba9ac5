#include "ctc/config.hpp"

#include <doctest.h>

#include <fstream>
#include <string>

using namespace ctc;

TEST_CASE("minimal evolve config parses with defaults") {
    const RunConfig cfg = parse_config(
        "mode = evolve\n"
        "n = 2\n"
        "R = 1\n"
        "v_star = 1\n"
        "M = 256\n"
        "t_end = 10\n"
        "u0 = gaussian-bump(0,0.2,5)\n");
    CHECK(cfg.mode == RunMode::evolve);
    CHECK(cfg.M == 256);
    CHECK(cfg.eps == 0.0);  // default
    CHECK(cfg.u0.kind == InitialSpec::Kind::gaussian_bump);
    CHECK(cfg.u0.amplitude == 5.0);
    CHECK_FALSE(cfg.v0.has_value());  // defaults to constant(v_star)
}

TEST_CASE("semantic violations name the constraint") {
    auto expect_error = [](const std::string& text, const std::string& fragment) {
        try {
            parse_config(text);
            FAIL("expected ConfigError for: " << text);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    expect_error("mode = evolve\neps = 1.5\n", "eps must lie in [0,1)");
    expect_error("mode = evolve\nn = 1\n", "n must satisfy n >= 2");
    expect_error("mode = evolve\nM = 4\n", "M must satisfy M >= 8");
    expect_error("mode = evolve\ncfl_safety = 1.5\n", "cfl_safety");
    expect_error("mode = flying\n", "mode must be one of");
    expect_error("mode = evolve\nbogus_key = 1\n", "unknown key 'bogus_key'");
    expect_error("mode = evolve\nn = 2\nn = 3\n", "duplicate key 'n'");
    expect_error("mode = mass-invert\n", "requires m_target");
    expect_error("mode = sweep\n", "requires sweep_param");
    expect_error("mode = evolve\nu0 = blob(1)\n", "unknown preset");
}

TEST_CASE("syntax errors carry the line number") {
    try {
        parse_config("mode = evolve\nthis line has no equals\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("comments and blank lines are ignored") {
    const RunConfig cfg = parse_config(
        "# full-line comment\n"
        "\n"
        "mode = stationary   # trailing comment\n"
        "alpha = 2.5\n");
    CHECK(cfg.mode == RunMode::stationary);
    CHECK(cfg.alpha == 2.5);
}

TEST_CASE("sweep configs") {
    const RunConfig cfg = parse_config(
        "mode = sweep\n"
        "sweep_mode = stationary\n"
        "sweep_param = alpha\n"
        "sweep_values = 0.5, 1, 2\n");
    REQUIRE(cfg.sweep_values.size() == 3);
    CHECK(cfg.sweep_values[1] == 1.0);
}

TEST_CASE("effective config dump round-trips through the parser") {
    const RunConfig cfg = parse_config(
        "mode = evolve\n"
        "n = 3\n"
        "eps = 0.01\n"
        "u0 = gaussian-bump(0,0.25,2)\n");
    const std::string dump = effective_config(cfg);
    const RunConfig again = parse_config(dump);
    CHECK(effective_config(again) == dump);
    CHECK(again.n == 3);
    CHECK(again.eps == 0.01);
}

TEST_CASE("build_initial materializes validated presets") {
    const RunConfig cfg = parse_config(
        "mode = evolve\n"
        "n = 2\n"
        "M = 128\n"
        "v_star = 1\n"
        "u0 = gaussian-bump(0,0.2,5)\n"
        "v0 = gaussian-bump(0,0.3,-0.4)\n");
    auto grid = make_grid(cfg.n, cfg.R, cfg.M);
    const InitialData data = build_initial(cfg, grid);
    // v0 rides on v_star and is boundary-compatibilized, so validation passes.
    CHECK(validate_initial(data, params_of(cfg)).ok());
    CHECK(data.v0.values.minCoeff() > 0.0);
    // Peak sampled at the first cell center (h/2 off the bump's apex).
    CHECK(data.u0.values.maxCoeff() == doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("from-file profiles are read verbatim") {
    const std::string path = "/tmp/ctc_test_profile.txt";
    {
        std::ofstream out(path);
        out << "# comment\n";
        for (int i = 0; i < 16; ++i) out << 1.0 + 0.1 * i << "\n";
    }
    RunConfig cfg = parse_config("mode = evolve\nM = 16\nu0 = from-file(" + path + ")\n");
    auto grid = make_grid(cfg.n, cfg.R, cfg.M);
    const InitialData data = build_initial(cfg, grid);
    CHECK(data.u0.values[0] == 1.0);
    CHECK(data.u0.values[15] == doctest::Approx(2.5));

    cfg.M = 32;  // wrong length
    auto grid32 = make_grid(cfg.n, cfg.R, 32);
    CHECK_THROWS_AS(build_initial(cfg, grid32), ConfigError);
}
