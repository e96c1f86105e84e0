#pragma once

#include <map>
#include <optional>
#include <string>

#include "gkp/rational.hpp"

namespace gkp {

// Flat key=value run configuration; keys are dotted section names
// (grid.nx, time.h, ...). Unknown keys are rejected.
struct RunConfig {
    // equation
    long p = 1;
    long q = 1;
    int lambda = -1;
    // grid
    int nx = 0;
    int ny = 0;
    double scale_x = 0.0;
    double scale_y = 0.0;
    // time: exactly one of h / n_steps together with t_end
    std::optional<double> h;
    std::optional<long> n_steps;
    double t_end = 0.0;
    // initial data
    double beta = 1.0;
    std::string snapshot_path;  // external snapshot instead of the beta family
    // solver
    std::string kind = "direct";      // direct | rescaled
    std::string closure = "a-only";   // a-only | full
    double delta_stop = 1e-3;
    double mass_stop = 0.1;
    // output
    int diag_stride = 1;
    int snapshot_stride = 0;
    bool slices = true;
    // numerics
    double delta_scale = 1e-12;
    int contour_points = 32;
    bool dealias = false;
    bool deterministic = false;
    int threads = 1;

    double step() const { return h ? *h : t_end / static_cast<double>(*n_steps); }
    long steps() const;
    void validate() const;

    // Divide nx, ny and the step count uniformly (desk-scale runs).
    void apply_scale_factor(int f);
};

// Parse a config file; errors carry line numbers, constraint violations
// the field name.
RunConfig load_config(const std::string& path);

// Parse key=value lines on top of an existing config.
std::map<std::string, std::string> parse_kv_file(const std::string& path);
void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig config_from_kv(const std::map<std::string, std::string>& kv);

}  // namespace gkp
