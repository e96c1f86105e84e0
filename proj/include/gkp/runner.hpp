#pragma once

#include <map>
#include <string>
#include <vector>

#include "gkp/direct.hpp"
#include "gkp/fit.hpp"
#include "gkp/presets.hpp"

namespace gkp {

struct RunOptions {
    std::string output_dir = "out";
    int scale_factor = 1;
    int threads = 1;
    bool deterministic = false;
    std::string resume_path;  // snapshot to resume from
    std::map<std::string, std::string> overrides;  // --set key=value
};

struct ExitReport {
    StopReason reason = StopReason::completed;
    int exit_code = 0;  // 0 completed / 2 delta_exceeded / 3 diverged
    double t_final = 0.0;
    std::vector<FitResult> fits;
    std::vector<std::string> verdicts;
    // crosscheck presets only: sup of the relative slice discrepancy on the core
    double crosscheck_discrepancy = -1.0;
    double crosscheck_t_phys = 0.0;
    std::string report_path;
};

// Frozen diagnostics CSV column order.
extern const char* kDiagnosticsCsvHeader;

int exit_code_for(StopReason r);

ExitReport run_preset(const std::string& name, const RunOptions& opt);
ExitReport run_config(const RunConfig& cfg, const RunOptions& opt,
                      const Preset* preset = nullptr);

}  // namespace gkp
