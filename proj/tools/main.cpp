#include "ctc/config.hpp"
#include "ctc/run_modes.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"ctc-radial: radial finite-volume solver and verification suite for the "
                 "chemotaxis-consumption system with Dirichlet signal boundary data"};

    std::string config_path;
    int jobs = 1;
    std::uint64_t seed = 0;
    bool print_effective = false;
    app.add_option("--config", config_path, "run configuration file (key = value lines)")->required();
    app.add_option("--jobs", jobs, "worker pool size for sweep/verify modes")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for randomized verification campaigns");
    app.add_flag("--print-effective-config", print_effective, "dump the parsed config with all defaults, then exit");

    CLI11_PARSE(app, argc, argv);

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config file '" << config_path << "'\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    ctc::RunConfig cfg;
    try {
        cfg = ctc::parse_config(buffer.str());
    } catch (const ctc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (print_effective) {
        std::cout << ctc::effective_config(cfg);
        return 0;
    }
    return ctc::run_mode(cfg, ctc::RunOptions{jobs, seed}, std::cout);
}
