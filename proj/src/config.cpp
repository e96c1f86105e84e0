#include "gkp/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gkp/errors.hpp"

namespace gkp {

long RunConfig::steps() const {
    if (n_steps) return *n_steps;
    return std::lround(t_end / *h);
}

void RunConfig::validate() const {
    if (q <= 0 || q % 2 == 0) throw ConfigError("equation.q: must be a positive odd integer");
    if (p <= 0) throw ConfigError("equation.p: must be positive");
    if (lambda != 1 && lambda != -1) throw ConfigError("equation.lambda: must be 1 or -1");
    if (nx <= 0 || ny <= 0) throw ConfigError("grid.nx/grid.ny: must be positive");
    if (!(scale_x > 0.0) || !(scale_y > 0.0))
        throw ConfigError("grid.scale_x/grid.scale_y: must be positive");
    if (h.has_value() == n_steps.has_value())
        throw ConfigError("time: exactly one of time.h and time.n_steps is required");
    if (h && !(*h > 0.0)) throw ConfigError("time.h: must be positive");
    if (n_steps && *n_steps <= 0) throw ConfigError("time.n_steps: must be positive");
    if (!(t_end > 0.0)) throw ConfigError("time.t_end: must be positive");
    if (kind != "direct" && kind != "rescaled")
        throw ConfigError("solver.kind: must be 'direct' or 'rescaled'");
    if (closure != "a-only" && closure != "full")
        throw ConfigError("solver.closure: must be 'a-only' or 'full'");
    if (diag_stride < 1) throw ConfigError("output.diag_stride: must be >= 1");
    if (snapshot_stride < 0) throw ConfigError("output.snapshot_stride: must be >= 0");
    if (contour_points < 16 || contour_points % 2 != 0)
        throw ConfigError("numerics.contour_points: must be even and >= 16");
    if (threads < 1) throw ConfigError("numerics.threads: must be >= 1");
}

void RunConfig::apply_scale_factor(int f) {
    if (f < 1) throw ConfigError("scale_factor: must be >= 1");
    if (f == 1) return;
    if (nx % f != 0 || ny % f != 0)
        throw ConfigError("scale_factor: must divide grid.nx and grid.ny");
    long ns = steps();
    if (ns % f != 0) throw ConfigError("scale_factor: must divide the step count");
    nx /= f;
    ny /= f;
    if (n_steps) {
        n_steps = ns / f;
    } else {
        h = *h * f;
    }
}

namespace {

long to_long(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long out;
    try {
        out = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key + ": not an integer: '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(key + ": not an integer: '" + v + "'");
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(key + ": not a number: '" + v + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(key + ": not a boolean: '" + v + "'");
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "equation.p") cfg.p = to_long(key, value);
    else if (key == "equation.q") cfg.q = to_long(key, value);
    else if (key == "equation.lambda") cfg.lambda = static_cast<int>(to_long(key, value));
    else if (key == "grid.nx") cfg.nx = static_cast<int>(to_long(key, value));
    else if (key == "grid.ny") cfg.ny = static_cast<int>(to_long(key, value));
    else if (key == "grid.scale_x") cfg.scale_x = to_double(key, value);
    else if (key == "grid.scale_y") cfg.scale_y = to_double(key, value);
    else if (key == "time.h") { cfg.h = to_double(key, value); cfg.n_steps.reset(); }
    else if (key == "time.n_steps") { cfg.n_steps = to_long(key, value); cfg.h.reset(); }
    else if (key == "time.t_end") cfg.t_end = to_double(key, value);
    else if (key == "initial.beta") cfg.beta = to_double(key, value);
    else if (key == "initial.snapshot") cfg.snapshot_path = value;
    else if (key == "solver.kind") cfg.kind = value;
    else if (key == "solver.closure") cfg.closure = value;
    else if (key == "solver.delta_stop") cfg.delta_stop = to_double(key, value);
    else if (key == "solver.mass_stop") cfg.mass_stop = to_double(key, value);
    else if (key == "output.diag_stride") cfg.diag_stride = static_cast<int>(to_long(key, value));
    else if (key == "output.snapshot_stride")
        cfg.snapshot_stride = static_cast<int>(to_long(key, value));
    else if (key == "output.slices") cfg.slices = to_bool(key, value);
    else if (key == "numerics.delta_scale") cfg.delta_scale = to_double(key, value);
    else if (key == "numerics.contour_points")
        cfg.contour_points = static_cast<int>(to_long(key, value));
    else if (key == "numerics.dealias") cfg.dealias = to_bool(key, value);
    else if (key == "numerics.deterministic") cfg.deterministic = to_bool(key, value);
    else if (key == "numerics.threads") cfg.threads = static_cast<int>(to_long(key, value));
    else throw ConfigError("unknown key: '" + key + "'");
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

RunConfig config_from_kv(const std::map<std::string, std::string>& kv) {
    RunConfig cfg;
    for (const auto& [k, v] : kv) apply_kv(cfg, k, v);
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    return config_from_kv(parse_kv_file(path));
}

}  // namespace gkp
