#pragma once

#include "ctc/evolve.hpp"
#include "ctc/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctc {

/// Config or CLI error; message carries the line number and offending key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { evolve, stationary, mass_invert, sweep, verify };

/// One named initial-data preset: constant(c), gaussian-bump(center,width,
/// amplitude), or from-file(path). For v0, gaussian-bump is additive around
/// v_star and the outermost cell is adjusted so the quadratic extrapolant
/// meets v_star exactly (the boundary-compatibility gate is 1e-10).
struct InitialSpec {
    enum class Kind { constant, gaussian_bump, from_file };
    Kind kind = Kind::constant;
    double value = 1.0;                           // constant
    double center = 0.0, width = 0.2, amplitude = 1.0;  // gaussian-bump
    std::string path;                             // from-file
};

/// Flat key-value run configuration. Every module precondition is
/// re-validated at parse time; unknown keys are rejected.
struct RunConfig {
    RunMode mode = RunMode::evolve;

    int n = 2;
    double R = 1.0;
    double v_star = 1.0;
    double eps = 0.0;
    int M = 256;

    double dt_max = 1e-2;
    double cfl_safety = 0.4;
    double t_end = 1.0;
    double output_dt = 0.1;
    FluxScheme flux_scheme = FluxScheme::centered;

    InitialSpec u0;                     // default constant(1)
    double u0_offset = 0.0;
    std::optional<InitialSpec> v0;      // default: constant(v_star)

    double alpha = 1.0;
    std::optional<double> m_target;

    double tol = 1e-10;
    int max_iter = 500;

    std::string out_dir = "out";

    RunMode sweep_mode = RunMode::stationary;
    std::string sweep_param;            // alpha | eps | v_star
    std::vector<double> sweep_values;

    int inequality_samples = 100;
    int inequality_M = 512;
    int oracle_M = 2048;
    int monotone_pairs = 20;
};

/// Parses a UTF-8 "key = value" document ('#' comments, blank lines allowed).
/// Throws ConfigError naming the line and key for syntax errors and the
/// violated constraint for semantic ones.
RunConfig parse_config(const std::string& text);

/// Stable dump of every key with defaults filled in (--print-effective-config).
std::string effective_config(const RunConfig& cfg);

/// Materializes the initial data presets on the given grid.
InitialData build_initial(const RunConfig& cfg, GridPtr grid);

ModelParams params_of(const RunConfig& cfg);

std::string to_string(RunMode mode);

}  // namespace ctc
