#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gkp/errors.hpp"
#include "gkp/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral solver suite for generalized KP equations"};

    std::string preset_name, config_path;
    std::vector<std::string> sets;
    bool list_presets = false;
    gkp::RunOptions opt;

    app.add_option("--preset", preset_name, "Named experiment preset");
    app.add_option("--config", config_path, "Run configuration file (key = value lines)");
    app.add_option("--set", sets, "Override a config key, e.g. --set time.t_end=0.1")
        ->type_name("KEY=VALUE");
    app.add_option("--output-dir", opt.output_dir, "Directory for CSV/snapshot/report output");
    app.add_option("--threads", opt.threads, "FFT thread count")->check(CLI::PositiveNumber);
    app.add_flag("--deterministic", opt.deterministic,
                 "Bitwise-reproducible planning (slower transforms)");
    app.add_option("--resume", opt.resume_path, "Snapshot file to resume from");
    app.add_option("--scale-factor", opt.scale_factor,
                   "Uniformly divide nx, ny and the step count")
        ->check(CLI::PositiveNumber);
    app.add_flag("--list-presets", list_presets, "List available presets and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (list_presets) {
        for (const auto& p : gkp::preset_registry())
            std::printf("%-18s %s\n", p.name.c_str(), p.description.c_str());
        return 0;
    }
    if (preset_name.empty() == config_path.empty()) {
        std::fprintf(stderr, "error: exactly one of --preset and --config is required\n");
        return 1;
    }

    try {
        for (const auto& s : sets) {
            auto eq = s.find('=');
            if (eq == std::string::npos) {
                std::fprintf(stderr, "error: --set expects KEY=VALUE, got '%s'\n", s.c_str());
                return 1;
            }
            opt.overrides[s.substr(0, eq)] = s.substr(eq + 1);
        }

        gkp::ExitReport rep;
        if (!preset_name.empty()) {
            rep = gkp::run_preset(preset_name, opt);
        } else {
            gkp::RunConfig cfg = gkp::load_config(config_path);
            for (const auto& [k, v] : opt.overrides) gkp::apply_kv(cfg, k, v);
            if (opt.scale_factor > 1) cfg.apply_scale_factor(opt.scale_factor);
            rep = gkp::run_config(cfg, opt);
        }
        std::printf("reason: %s\nt_final: %.10g\nreport: %s\n", gkp::to_string(rep.reason),
                    rep.t_final, rep.report_path.c_str());
        for (const auto& f : rep.fits)
            std::printf("fit %s: C=%.6g c=%.6g t*=%.6g residual=%.3g\n", f.norm_id.c_str(),
                        f.C, f.c, f.t_star, f.residual);
        if (rep.crosscheck_discrepancy >= 0.0)
            std::printf("crosscheck: t_phys=%.6g sup_discrepancy=%.3g\n",
                        rep.crosscheck_t_phys, rep.crosscheck_discrepancy);
        return rep.exit_code;
    } catch (const gkp::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
