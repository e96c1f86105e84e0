#include "gkp/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "gkp/errors.hpp"
#include "gkp/fft.hpp"
#include "gkp/rescaled.hpp"
#include "gkp/snapshot.hpp"
#include "gkp/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gkp {

const char* kDiagnosticsCsvHeader =
    "time,mass,energy,delta_mass,delta_energy,linf_u,l2_uy,l2_ux,u_min,x_min,y_min,"
    "tail_x,tail_y";

int exit_code_for(StopReason r) {
    switch (r) {
        case StopReason::completed: return 0;
        case StopReason::delta_exceeded: return 2;
        default: return 3;
    }
}

namespace {

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void write_csv_row(std::ofstream& out, const DiagnosticsRecord& r) {
    out << num(r.t) << ',' << num(r.mass) << ',' << num(r.energy) << ','
        << num(r.delta_mass) << ',' << num(r.delta_energy) << ',' << num(r.linf_u)
        << ',' << num(r.l2_uy) << ',' << num(r.l2_ux) << ',' << num(r.u_min) << ','
        << num(r.x_min) << ',' << num(r.y_min) << ',' << num(r.tail_x) << ','
        << num(r.tail_y) << '\n';
}

void write_slice_csv(const std::string& path, const std::vector<double>& x,
                     const std::vector<double>& u) {
    std::ofstream out(path);
    out << "x,u\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        out << num(x[i]) << ',' << num(u[i]) << '\n';
}

// The canonical u -> w_hat map shared by snapshot writing and resume, so a
// checkpointed run and its resumed twin continue from bit-identical state.
SpectralField w_from_u(const RealField& u, double delta) {
    SpectralField F = forward(u);
    const Grid2D& g = *F.grid;
    for (int my = 0; my < g.ny; ++my) {
        Complex* row = F.coef.data() + g.index(0, my);
        for (int mx = 0; mx < g.nx; ++mx)
            row[mx] *= Complex{0.0, -regularized_recip(g.kx[mx], delta)};
    }
    return F;
}

GkpParams direct_params(const RunConfig& cfg) {
    GkpParams p;
    p.n = Rational{cfg.p, cfg.q};
    p.lambda = cfg.lambda;
    p.grid = make_grid(cfg.nx, cfg.ny, cfg.scale_x, cfg.scale_y);
    p.h = cfg.step();
    p.t_end = cfg.t_end;
    p.delta_stop = cfg.delta_stop;
    p.delta_scale = cfg.delta_scale;
    p.contour_points = cfg.contour_points;
    p.dealias = cfg.dealias;
    return p;
}

RescaledParams rescaled_params(const RunConfig& cfg) {
    RescaledParams p;
    p.n = Rational{cfg.p, cfg.q};
    p.lambda = cfg.lambda;
    p.grid = make_grid(cfg.nx, cfg.ny, cfg.scale_x, cfg.scale_y);
    p.h = cfg.step();
    p.tau_end = cfg.t_end;
    p.mass_stop = cfg.mass_stop;
    p.delta_scale = cfg.delta_scale;
    p.contour_points = cfg.contour_points;
    p.dealias = cfg.dealias;
    if (cfg.closure == "full") p.closure.mode = RescaleClosure::Mode::full;
    return p;
}

NormTrace trace_of(const std::vector<DiagnosticsRecord>& records,
                   const std::string& norm_id) {
    NormTrace tr;
    tr.name = norm_id;
    for (const auto& r : records) {
        double v;
        if (norm_id == "linf_u") v = r.linf_u;
        else if (norm_id == "l2_uy") v = r.l2_uy;
        else if (norm_id == "l2_uy_squared") v = r.l2_uy * r.l2_uy;
        else if (norm_id == "x_min") v = r.x_min;
        else throw ConfigError("unknown norm id: " + norm_id);
        tr.push(r.t, v);
    }
    return tr;
}

FitResult run_fit(const std::vector<DiagnosticsRecord>& records, const FitRecipe& recipe) {
    NormTrace tr = trace_of(records, recipe.norm_id);
    int k = std::min<int>(recipe.k_last, static_cast<int>(tr.size()));
    double t_last = tr.t.back();
    double span = t_last - tr.t[tr.size() - k];
    std::array<double, 3> guess{std::log(std::max(tr.v.back(), 1e-300)), -0.5,
                                t_last + 0.05 * std::max(span, 1e-12)};
    FitResult fit = fit_log_power(tr, k, guess);
    // one polish restart from the first minimum
    fit = fit_log_power(tr, k, {fit.C, fit.c, fit.t_star});
    fit.norm_id = recipe.norm_id;
    return fit;
}

void write_report(const std::string& path, const ExitReport& rep, const RunConfig& cfg,
                  const RunOptions& opt, const Preset* preset) {
    json j;
    if (preset) j["preset"] = preset->name;
    j["reason"] = to_string(rep.reason);
    j["exit_code"] = rep.exit_code;
    j["t_final"] = rep.t_final;
    j["scale_factor"] = opt.scale_factor;
    j["solver"] = cfg.kind;
    j["grid"] = {{"nx", cfg.nx}, {"ny", cfg.ny},
                 {"scale_x", cfg.scale_x}, {"scale_y", cfg.scale_y}};
    j["equation"] = {{"p", cfg.p}, {"q", cfg.q}, {"lambda", cfg.lambda}};
    json fits = json::array();
    for (std::size_t i = 0; i < rep.fits.size(); ++i) {
        const FitResult& f = rep.fits[i];
        json jf = {{"norm_id", f.norm_id}, {"C", f.C},          {"c", f.c},
                   {"t_star", f.t_star},   {"residual", f.residual},
                   {"k_last", f.k_last},   {"converged", f.converged}};
        if (i < rep.verdicts.size()) jf["verdict"] = rep.verdicts[i];
        fits.push_back(jf);
    }
    j["fits"] = fits;
    if (rep.crosscheck_discrepancy >= 0.0)
        j["crosscheck"] = {{"t_phys", rep.crosscheck_t_phys},
                           {"slice_sup_discrepancy", rep.crosscheck_discrepancy}};
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

struct DirectOutcome {
    RunResult result;
    std::vector<DiagnosticsRecord> records;
};

DirectOutcome run_direct_leg(const RunConfig& cfg, const RunOptions& opt,
                             const fs::path& dir, const std::string& csv_name) {
    GkpParams params = direct_params(cfg);
    const double delta = params.antiderivative_delta();

    std::ofstream csv(dir / csv_name);
    csv << kDiagnosticsCsvHeader << '\n';

    DirectOutcome out;
    Observers obs;
    obs.diag_stride = cfg.diag_stride;
    obs.on_record = [&](const DiagnosticsRecord& r) {
        out.records.push_back(r);
        write_csv_row(csv, r);
    };
    obs.snapshot_stride = cfg.snapshot_stride;
    if (cfg.snapshot_stride > 0) {
        obs.on_snapshot = [&, delta](SolverState& s) {
            RealField u = inverse(u_hat_of(s));
            SnapshotHeader h;
            h.nx = cfg.nx; h.ny = cfg.ny;
            h.scale_x = cfg.scale_x; h.scale_y = cfg.scale_y;
            h.t = s.t; h.L = 1.0;
            h.p = cfg.p; h.q = cfg.q; h.lambda = cfg.lambda;
            write_snapshot((dir / ("snapshot_" + std::to_string(s.step_index) + ".gkps"))
                               .string(), h, u);
            s.w_hat = w_from_u(u, delta);  // keep the run on the checkpointed state
        };
    }

    std::string resume = !opt.resume_path.empty() ? opt.resume_path : cfg.snapshot_path;
    if (!resume.empty()) {
        auto [h, u] = read_snapshot(resume);
        if (h.nx != cfg.nx || h.ny != cfg.ny || h.scale_x != cfg.scale_x ||
            h.scale_y != cfg.scale_y)
            throw SnapshotError("snapshot grid does not match the configuration");
        SolverState state;
        state.w_hat = w_from_u(u, delta);
        state.t = h.t;
        state.step_index = std::lround(h.t / params.h);
        out.result = run_direct_from(params, std::move(state), obs);
    } else {
        out.result = run_direct(params, InitialData::gaussian_dxx(cfg.beta), obs);
    }

    if (cfg.slices) {
        RealField u = inverse(u_hat_of(out.result.state));
        const Grid2D& g = *u.grid;
        std::vector<double> us(g.nx);
        for (int ix = 0; ix < g.nx; ++ix) us[ix] = u(ix, g.ny / 2);
        write_slice_csv((dir / "slice_final.csv").string(), g.x, us);
    }
    {
        RealField u = inverse(u_hat_of(out.result.state));
        SnapshotHeader h;
        h.nx = cfg.nx; h.ny = cfg.ny;
        h.scale_x = cfg.scale_x; h.scale_y = cfg.scale_y;
        h.t = out.result.state.t; h.L = 1.0;
        h.p = cfg.p; h.q = cfg.q; h.lambda = cfg.lambda;
        write_snapshot((dir / "snapshot_final.gkps").string(), h, u);
    }
    return out;
}

}  // namespace

ExitReport run_config(const RunConfig& cfg_in, const RunOptions& opt, const Preset* preset) {
    RunConfig cfg = cfg_in;
    cfg.validate();

    int threads = opt.threads != 1 ? opt.threads : cfg.threads;
    bool deterministic = opt.deterministic || cfg.deterministic;
    FftEngine::instance().configure(threads, deterministic);

    fs::path dir(opt.output_dir);
    fs::create_directories(dir);

    ExitReport rep;

    if (cfg.kind == "direct") {
        DirectOutcome out = run_direct_leg(cfg, opt, dir, "diagnostics.csv");
        rep.reason = out.result.reason;
        rep.t_final = out.result.state.t;
        if (preset && preset->fit.enabled && out.records.size() >= 10) {
            FitResult fit = run_fit(out.records, preset->fit);
            RatePrediction pred = predict_rates(Rational{cfg.p, cfg.q});
            rep.verdicts.push_back(to_string(classify(fit, pred, 0.1)));
            rep.fits.push_back(fit);
        }
    } else {
        RescaledParams params = rescaled_params(cfg);
        std::ofstream csv(dir / "diagnostics.csv");
        csv << kDiagnosticsCsvHeader << '\n';
        std::vector<DiagnosticsRecord> records;
        Observers obs;
        obs.diag_stride = cfg.diag_stride;
        obs.on_record = [&](const DiagnosticsRecord& r) {
            records.push_back(r);
            write_csv_row(csv, r);
        };
        RescaledResult res = run_rescaled(params, InitialData::gaussian_dxx(cfg.beta), obs);
        rep.reason = res.reason;
        rep.t_final = res.state.t_phys;

        auto [u_back, map] = rescale_back(res.state, params.n);
        if (cfg.slices) {
            const Grid2D& g = *u_back.grid;
            std::vector<double> xs(g.nx), us(g.nx);
            for (int ix = 0; ix < g.nx; ++ix) {
                xs[ix] = map.x_m + g.x[ix];
                us[ix] = u_back(ix, g.ny / 2);
            }
            write_slice_csv((dir / "slice_rescaled.csv").string(), xs, us);
        }
        {
            const Grid2D& g = *u_back.grid;
            SnapshotHeader h;
            h.nx = g.nx; h.ny = g.ny;
            h.scale_x = g.scale_x; h.scale_y = g.scale_y;
            h.t = res.state.t_phys; h.L = res.state.L;
            h.p = cfg.p; h.q = cfg.q; h.lambda = cfg.lambda;
            write_snapshot((dir / "snapshot_final.gkps").string(), h, u_back);
        }

        if (preset && preset->crosscheck) {
            RunConfig dcfg = preset->direct_config;
            if (opt.scale_factor > 1) dcfg.apply_scale_factor(opt.scale_factor);
            double t_phys = res.state.t_phys;
            long steps = dcfg.steps();
            dcfg.t_end = t_phys;
            dcfg.h.reset();
            dcfg.n_steps = steps;
            dcfg.snapshot_stride = 0;
            DirectOutcome d = run_direct_leg(dcfg, RunOptions{}, dir, "diagnostics_direct.csv");

            const Grid2D& g = *d.result.state.w_hat.grid;
            RealField u_d = inverse(u_hat_of(d.result.state));
            std::vector<double> us_d(g.nx);
            for (int ix = 0; ix < g.nx; ++ix) us_d[ix] = u_d(ix, g.ny / 2);
            std::vector<double> us_r = sample_slice_y0(res.state, params.n, g.x);
            write_slice_csv((dir / "slice_direct.csv").string(), g.x, us_d);
            write_slice_csv((dir / "slice_rescaled_on_direct_grid.csv").string(), g.x, us_r);

            double denom = 0.0, sup = 0.0;
            for (int ix = 0; ix < g.nx; ++ix) {
                if (std::fabs(g.x[ix]) > 2.0) continue;
                denom = std::max(denom, std::fabs(us_d[ix]));
                sup = std::max(sup, std::fabs(us_d[ix] - us_r[ix]));
            }
            rep.crosscheck_discrepancy = denom > 0.0 ? sup / denom : INFINITY;
            rep.crosscheck_t_phys = t_phys;
            rep.reason = d.result.reason;
            rep.t_final = d.result.state.t;
        }
    }

    rep.exit_code = exit_code_for(rep.reason);
    rep.report_path = (dir / "report.json").string();
    write_report(rep.report_path, rep, cfg, opt, preset);
    return rep;
}

ExitReport run_preset(const std::string& name, const RunOptions& opt) {
    const Preset* preset = find_preset(name);
    if (!preset) throw ConfigError("unknown preset: " + name);
    RunConfig cfg = preset->config;
    for (const auto& [k, v] : opt.overrides) apply_kv(cfg, k, v);
    if (opt.scale_factor > 1) cfg.apply_scale_factor(opt.scale_factor);
    return run_config(cfg, opt, preset);
}

}  // namespace gkp
