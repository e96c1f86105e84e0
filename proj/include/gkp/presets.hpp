#pragma once

#include <vector>

#include "gkp/config.hpp"

namespace gkp {

struct FitRecipe {
    bool enabled = false;
    std::string norm_id;  // linf_u | l2_uy | l2_uy_squared | x_min
    int k_last = 0;
    bool squared = false;
};

// A canned experiment: configuration plus the externally reported outcome
// used by the test harness.
struct Preset {
    std::string name;
    std::string description;
    RunConfig config;
    std::string expected_outcome;  // completed | delta_exceeded
    FitRecipe fit;

    // Reported reference values (0 when not applicable).
    double reported_t_star = 0.0;
    double reported_c = 0.0;
    double reported_conservation = 0.0;

    // Rescaled-vs-direct comparison presets run both solvers.
    bool crosscheck = false;
    RunConfig direct_config;      // direct leg of a crosscheck
    long crosscheck_direct_steps = 0;
};

const std::vector<Preset>& preset_registry();
const Preset* find_preset(const std::string& name);

}  // namespace gkp
