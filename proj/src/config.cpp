#include "ctc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace ctc {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& value, int line, const std::string& key) {
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') fail(line, "key '" + key + "': '" + value + "' is not a number");
    return x;
}

int parse_int(const std::string& value, int line, const std::string& key) {
    char* end = nullptr;
    const long x = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') fail(line, "key '" + key + "': '" + value + "' is not an integer");
    return static_cast<int>(x);
}

std::vector<double> parse_list(const std::string& value, int line, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), line, key));
    if (out.empty()) fail(line, "key '" + key + "': empty list");
    return out;
}

InitialSpec parse_preset(const std::string& value, int line, const std::string& key) {
    const auto open = value.find('(');
    if (open == std::string::npos || value.back() != ')')
        fail(line, "key '" + key + "': expected constant(c), gaussian-bump(center,width,amplitude) or from-file(path)");
    const std::string name = trim(value.substr(0, open));
    const std::string args = value.substr(open + 1, value.size() - open - 2);

    InitialSpec spec;
    if (name == "constant") {
        spec.kind = InitialSpec::Kind::constant;
        spec.value = parse_double(trim(args), line, key);
    } else if (name == "gaussian-bump") {
        spec.kind = InitialSpec::Kind::gaussian_bump;
        const auto parts = [&] {
            std::vector<std::string> p;
            std::stringstream ss(args);
            std::string item;
            while (std::getline(ss, item, ',')) p.push_back(trim(item));
            return p;
        }();
        if (parts.size() != 3) fail(line, "key '" + key + "': gaussian-bump takes (center,width,amplitude)");
        spec.center = parse_double(parts[0], line, key);
        spec.width = parse_double(parts[1], line, key);
        spec.amplitude = parse_double(parts[2], line, key);
        if (!(spec.width > 0.0)) fail(line, "key '" + key + "': gaussian-bump width must be positive");
    } else if (name == "from-file") {
        spec.kind = InitialSpec::Kind::from_file;
        spec.path = trim(args);
        if (spec.path.empty()) fail(line, "key '" + key + "': from-file needs a path");
    } else {
        fail(line, "key '" + key + "': unknown preset '" + name + "'");
    }
    return spec;
}

std::string preset_str(const InitialSpec& spec) {
    std::ostringstream os;
    switch (spec.kind) {
        case InitialSpec::Kind::constant:
            os << "constant(" << spec.value << ")";
            break;
        case InitialSpec::Kind::gaussian_bump:
            os << "gaussian-bump(" << spec.center << "," << spec.width << "," << spec.amplitude << ")";
            break;
        case InitialSpec::Kind::from_file:
            os << "from-file(" << spec.path << ")";
            break;
    }
    return os.str();
}

Array read_profile_file(const std::string& path, int cells) {
    std::ifstream in(path);
    if (!in) throw ConfigError("from-file: cannot open '" + path + "'");
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        char* end = nullptr;
        const double x = std::strtod(line.c_str(), &end);
        if (end == line.c_str() || *trim(end).c_str() != '\0')
            throw ConfigError("from-file '" + path + "' line " + std::to_string(lineno) + ": not a number");
        values.push_back(x);
    }
    if (static_cast<int>(values.size()) != cells)
        throw ConfigError("from-file '" + path + "': expected " + std::to_string(cells) + " values, got " +
                          std::to_string(values.size()));
    return Eigen::Map<const Array>(values.data(), values.size());
}

}  // namespace

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::evolve: return "evolve";
        case RunMode::stationary: return "stationary";
        case RunMode::mass_invert: return "mass-invert";
        case RunMode::sweep: return "sweep";
        case RunMode::verify: return "verify";
    }
    return "?";
}

RunConfig parse_config(const std::string& text) {
    // Pass 1: tokenize into unique key/value pairs.
    std::map<std::string, std::pair<std::string, int>> entries;  // key -> (value, line)
    std::vector<std::string> order;
    {
        std::stringstream ss(text);
        std::string raw;
        int lineno = 0;
        while (std::getline(ss, raw)) {
            ++lineno;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            const std::string line = trim(raw);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail(lineno, "expected 'key = value' (no '=' found, column 1)");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail(lineno, "missing key before '='");
            if (value.empty()) fail(lineno, "missing value for key '" + key + "'");
            if (entries.count(key)) fail(lineno, "duplicate key '" + key + "'");
            entries[key] = {value, lineno};
            order.push_back(key);
        }
    }

    RunConfig cfg;
    bool mode_seen = false;
    auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, int>> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        auto result = it->second;
        entries.erase(it);
        return result;
    };

    if (auto e = take("mode")) {
        mode_seen = true;
        const auto& [value, line] = *e;
        if (value == "evolve") cfg.mode = RunMode::evolve;
        else if (value == "stationary") cfg.mode = RunMode::stationary;
        else if (value == "mass-invert") cfg.mode = RunMode::mass_invert;
        else if (value == "sweep") cfg.mode = RunMode::sweep;
        else if (value == "verify") cfg.mode = RunMode::verify;
        else fail(line, "mode must be one of evolve, stationary, mass-invert, sweep, verify");
    }
    if (auto e = take("n")) {
        cfg.n = parse_int(e->first, e->second, "n");
        if (cfg.n < 2) fail(e->second, "n must satisfy n >= 2");
    }
    if (auto e = take("R")) {
        cfg.R = parse_double(e->first, e->second, "R");
        if (!(cfg.R > 0.0)) fail(e->second, "R must be positive");
    }
    if (auto e = take("v_star")) {
        cfg.v_star = parse_double(e->first, e->second, "v_star");
        if (!(cfg.v_star >= 0.0)) fail(e->second, "v_star must be nonnegative");
    }
    if (auto e = take("eps")) {
        cfg.eps = parse_double(e->first, e->second, "eps");
        if (!(cfg.eps >= 0.0 && cfg.eps < 1.0)) fail(e->second, "eps must lie in [0,1)");
    }
    if (auto e = take("M")) {
        cfg.M = parse_int(e->first, e->second, "M");
        if (cfg.M < 8) fail(e->second, "M must satisfy M >= 8");
    }
    if (auto e = take("dt_max")) {
        cfg.dt_max = parse_double(e->first, e->second, "dt_max");
        if (!(cfg.dt_max > 0.0)) fail(e->second, "dt_max must be positive");
    }
    if (auto e = take("cfl_safety")) {
        cfg.cfl_safety = parse_double(e->first, e->second, "cfl_safety");
        if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) fail(e->second, "cfl_safety must lie in (0,1]");
    }
    if (auto e = take("t_end")) {
        cfg.t_end = parse_double(e->first, e->second, "t_end");
        if (!(cfg.t_end >= 0.0)) fail(e->second, "t_end must be nonnegative");
    }
    if (auto e = take("output_dt")) {
        cfg.output_dt = parse_double(e->first, e->second, "output_dt");
        if (!(cfg.output_dt > 0.0)) fail(e->second, "output_dt must be positive");
    }
    if (auto e = take("flux_scheme")) {
        if (e->first == "centered") cfg.flux_scheme = FluxScheme::centered;
        else if (e->first == "upwind") cfg.flux_scheme = FluxScheme::upwind;
        else fail(e->second, "flux_scheme must be centered or upwind");
    }
    if (auto e = take("u0")) cfg.u0 = parse_preset(e->first, e->second, "u0");
    if (auto e = take("u0_offset")) {
        cfg.u0_offset = parse_double(e->first, e->second, "u0_offset");
        if (cfg.u0_offset < 0.0) fail(e->second, "u0_offset must be nonnegative");
    }
    if (auto e = take("v0")) cfg.v0 = parse_preset(e->first, e->second, "v0");
    if (auto e = take("alpha")) {
        cfg.alpha = parse_double(e->first, e->second, "alpha");
        if (!(cfg.alpha >= 0.0)) fail(e->second, "alpha must be nonnegative");
    }
    if (auto e = take("m_target")) {
        cfg.m_target = parse_double(e->first, e->second, "m_target");
        if (!(*cfg.m_target >= 0.0)) fail(e->second, "m_target must be nonnegative");
    }
    if (auto e = take("tol")) {
        cfg.tol = parse_double(e->first, e->second, "tol");
        if (!(cfg.tol > 0.0)) fail(e->second, "tol must be positive");
    }
    if (auto e = take("max_iter")) {
        cfg.max_iter = parse_int(e->first, e->second, "max_iter");
        if (cfg.max_iter < 1) fail(e->second, "max_iter must be at least 1");
    }
    if (auto e = take("out_dir")) cfg.out_dir = e->first;
    if (auto e = take("sweep_mode")) {
        if (e->first == "evolve") cfg.sweep_mode = RunMode::evolve;
        else if (e->first == "stationary") cfg.sweep_mode = RunMode::stationary;
        else if (e->first == "mass-invert") cfg.sweep_mode = RunMode::mass_invert;
        else fail(e->second, "sweep_mode must be evolve, stationary or mass-invert");
    }
    if (auto e = take("sweep_param")) {
        if (e->first != "alpha" && e->first != "eps" && e->first != "v_star" && e->first != "m_target")
            fail(e->second, "sweep_param must be one of alpha, eps, v_star, m_target");
        cfg.sweep_param = e->first;
    }
    if (auto e = take("sweep_values")) cfg.sweep_values = parse_list(e->first, e->second, "sweep_values");
    if (auto e = take("inequality_samples")) {
        cfg.inequality_samples = parse_int(e->first, e->second, "inequality_samples");
        if (cfg.inequality_samples < 1) fail(e->second, "inequality_samples must be at least 1");
    }
    if (auto e = take("inequality_M")) {
        cfg.inequality_M = parse_int(e->first, e->second, "inequality_M");
        if (cfg.inequality_M < 8) fail(e->second, "inequality_M must satisfy M >= 8");
    }
    if (auto e = take("oracle_M")) {
        cfg.oracle_M = parse_int(e->first, e->second, "oracle_M");
        if (cfg.oracle_M < 8) fail(e->second, "oracle_M must satisfy M >= 8");
    }
    if (auto e = take("monotone_pairs")) {
        cfg.monotone_pairs = parse_int(e->first, e->second, "monotone_pairs");
        if (cfg.monotone_pairs < 1) fail(e->second, "monotone_pairs must be at least 1");
    }

    if (!entries.empty()) {
        const auto& [key, rest] = *entries.begin();
        fail(rest.second, "unknown key '" + key + "'");
    }
    if (!mode_seen) throw ConfigError("config: required key 'mode' is missing");
    if (cfg.mode == RunMode::mass_invert && !cfg.m_target)
        throw ConfigError("config: mode=mass-invert requires m_target");
    if (cfg.mode == RunMode::sweep) {
        if (cfg.sweep_param.empty()) throw ConfigError("config: mode=sweep requires sweep_param");
        if (cfg.sweep_values.empty()) throw ConfigError("config: mode=sweep requires sweep_values");
        if (cfg.sweep_mode == RunMode::mass_invert && cfg.sweep_param != "m_target" && !cfg.m_target)
            throw ConfigError("config: sweep over mass-invert requires m_target");
    }
    return cfg;
}

std::string effective_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "mode = " << to_string(cfg.mode) << "\n";
    os << "n = " << cfg.n << "\n";
    os << "R = " << cfg.R << "\n";
    os << "v_star = " << cfg.v_star << "\n";
    os << "eps = " << cfg.eps << "\n";
    os << "M = " << cfg.M << "\n";
    os << "dt_max = " << cfg.dt_max << "\n";
    os << "cfl_safety = " << cfg.cfl_safety << "\n";
    os << "t_end = " << cfg.t_end << "\n";
    os << "output_dt = " << cfg.output_dt << "\n";
    os << "flux_scheme = " << (cfg.flux_scheme == FluxScheme::centered ? "centered" : "upwind") << "\n";
    os << "u0 = " << preset_str(cfg.u0) << "\n";
    os << "u0_offset = " << cfg.u0_offset << "\n";
    if (cfg.v0) {
        os << "v0 = " << preset_str(*cfg.v0) << "\n";
    } else {
        os << "v0 = constant(" << cfg.v_star << ")\n";
    }
    os << "alpha = " << cfg.alpha << "\n";
    if (cfg.m_target) os << "m_target = " << *cfg.m_target << "\n";
    os << "tol = " << cfg.tol << "\n";
    os << "max_iter = " << cfg.max_iter << "\n";
    os << "out_dir = " << cfg.out_dir << "\n";
    if (!cfg.sweep_param.empty()) {
        os << "sweep_mode = " << to_string(cfg.sweep_mode) << "\n";
        os << "sweep_param = " << cfg.sweep_param << "\n";
        os << "sweep_values = ";
        for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) os << (i ? "," : "") << cfg.sweep_values[i];
        os << "\n";
    }
    os << "inequality_samples = " << cfg.inequality_samples << "\n";
    os << "inequality_M = " << cfg.inequality_M << "\n";
    os << "oracle_M = " << cfg.oracle_M << "\n";
    os << "monotone_pairs = " << cfg.monotone_pairs << "\n";
    return os.str();
}

ModelParams params_of(const RunConfig& cfg) {
    return make_params(cfg.n, cfg.R, cfg.v_star, cfg.eps);
}

InitialData build_initial(const RunConfig& cfg, GridPtr grid) {
    auto sample = [&](const InitialSpec& spec, double baseline) -> RadialField {
        switch (spec.kind) {
            case InitialSpec::Kind::constant:
                return make_field(grid, spec.value);
            case InitialSpec::Kind::gaussian_bump:
                return make_field(grid, [&](double r) {
                    const double z = (r - spec.center) / spec.width;
                    return baseline + spec.amplitude * std::exp(-0.5 * z * z);
                });
            case InitialSpec::Kind::from_file:
                return make_field(grid, read_profile_file(spec.path, grid->cells()));
        }
        throw ConfigError("build_initial: unreachable preset kind");
    };

    InitialData data;
    data.u0 = sample(cfg.u0, 0.0);
    data.u0.values += cfg.u0_offset;

    const InitialSpec v0_spec = cfg.v0.value_or(InitialSpec{InitialSpec::Kind::constant, cfg.v_star, 0, 0.2, 1, ""});
    data.v0 = sample(v0_spec, cfg.v_star);  // bump presets ride on top of v_star
    if (v0_spec.kind == InitialSpec::Kind::gaussian_bump) {
        // Pin the outermost cell so the quadratic extrapolant hits v_star.
        const int m = grid->cells();
        data.v0.values[m - 1] =
            (8.0 * cfg.v_star + 10.0 * data.v0.values[m - 2] - 3.0 * data.v0.values[m - 3]) / 15.0;
    }
    return data;
}

}  // namespace ctc
