#include "gkp/direct.hpp"

#include <cmath>

#include "gkp/errors.hpp"
#include "gkp/fft.hpp"
#include "gkp/spectral.hpp"

namespace gkp {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::completed: return "completed";
        case StopReason::delta_exceeded: return "delta_exceeded";
        default: return "diverged";
    }
}

double GkpParams::antiderivative_delta() const {
    return delta_scale / grid->scale_x;
}

void GkpParams::validate() const {
    if (!grid) throw ConfigError("GkpParams: no grid");
    if (n.q % 2 == 0) throw ConfigError("GkpParams: q must be odd");
    if (n.value() < 1.0) throw ConfigError("GkpParams: n must be >= 1");
    if (lambda != 1 && lambda != -1) throw ConfigError("GkpParams: lambda must be +-1");
    if (!(h > 0.0)) throw ConfigError("GkpParams: h must be positive");
}

InitialData InitialData::gaussian_dxx(double beta) {
    InitialData d;
    d.beta = beta;
    d.w0 = [beta](std::shared_ptr<const Grid2D> grid) {
        RealField w(grid);
        const Grid2D& g = *grid;
        for (int iy = 0; iy < g.ny; ++iy) {
            double y = g.y[iy];
            for (int ix = 0; ix < g.nx; ++ix) {
                double x = g.x[ix];
                w(ix, iy) = -2.0 * beta * x * std::exp(-(x * x + y * y));
            }
        }
        return w;
    };
    return d;
}

InitialData InitialData::from_w(std::function<RealField(std::shared_ptr<const Grid2D>)> fn) {
    InitialData d;
    d.w0 = std::move(fn);
    return d;
}

SpectralField u_hat_of(const SolverState& s) {
    return derivative_x(s.w_hat, 1);
}

SpectralField nonlinear_w(const SpectralField& w_hat, const GkpParams& params) {
    RealField u = inverse(derivative_x(w_hat, 1));
    RealField up = real_power(u, params.n.p + params.n.q, params.n.q);
    SpectralField F = forward(up);
    const double scale = -1.0 / (params.n.value() + 1.0);
    for (auto& c : F.coef) c *= scale;
    zero_x_mean(F);
    if (params.dealias) dealias_23(F);
    return F;
}

DiagonalOperator linear_symbol(const Grid2D& grid, int lambda, double delta) {
    DiagonalOperator L(std::make_shared<const Grid2D>(grid));
    for (int my = 0; my < grid.ny; ++my) {
        double ky2 = grid.ky[my] * grid.ky[my];
        for (int mx = 0; mx < grid.nx; ++mx) {
            double kx = grid.kx[mx];
            double im = (mx == grid.nx / 2)
                            ? 0.0  // Nyquist column: kx^3 and kx/(kx^2+d^2) are odd
                            : kx * kx * kx - lambda * ky2 * regularized_recip(kx, delta);
            L.symbol[grid.index(mx, my)] = Complex{0.0, im};
        }
    }
    return L;
}

namespace {

RunResult run_loop(const GkpParams& params, SolverState state, const Observers& obs) {
    DiagonalOperator L = linear_symbol(*params.grid, params.lambda,
                                       params.antiderivative_delta());
    L.grid = params.grid;
    EtdCoefficients coeffs = contour_coefficients(L, params.h, params.contour_points);

    NonlinearCallback N = [&params](const SpectralField& w, double) {
        return nonlinear_w(w, params);
    };

    const double t0 = state.t;
    SpectralField u0_hat = u_hat_of(state);
    const double M0 = mass(u0_hat);
    const double E0 = energy(u0_hat, params.n, params.lambda,
                             params.antiderivative_delta());

    auto record = [&](const SolverState& s) {
        DiagnosticsRecord r = compute_record(u_hat_of(s), s.t, params.n, params.lambda,
                                             M0, E0, params.refine_minimum);
        if (obs.on_record) obs.on_record(r);
        return r;
    };

    record(state);
    const long total = std::lround((params.t_end - t0) / params.h);

    for (long m = 0; m < total; ++m) {
        SpectralField next;
        try {
            next = etdrk4_step(state.w_hat, state.t, coeffs, N);
        } catch (const Error&) {
            // non-finite stage or state; keep the last finite state
            return {std::move(state), StopReason::diverged};
        }
        state.w_hat = std::move(next);
        state.t = t0 + (m + 1) * params.h;
        ++state.step_index;

        bool last = (m == total - 1);
        if (obs.diag_stride > 0 && ((m + 1) % obs.diag_stride == 0 || last)) {
            DiagnosticsRecord r = record(state);
            if (!std::isfinite(r.linf_u))
                return {std::move(state), StopReason::diverged};
            double drift = params.stop_on == StopQuantity::energy ? r.delta_energy
                                                                  : r.delta_mass;
            if (drift > params.delta_stop)
                return {std::move(state), StopReason::delta_exceeded};
        }
        if (obs.snapshot_stride > 0 && obs.on_snapshot &&
            ((m + 1) % obs.snapshot_stride == 0 || last))
            obs.on_snapshot(state);
    }
    return {std::move(state), StopReason::completed};
}

}  // namespace

RunResult run_direct(const GkpParams& params, const InitialData& u0, const Observers& obs) {
    params.validate();
    SolverState state;
    state.w_hat = forward(u0.w0(params.grid));
    zero_x_mean(state.w_hat);
    return run_loop(params, std::move(state), obs);
}

RunResult run_direct_from(const GkpParams& params, SolverState state, const Observers& obs) {
    params.validate();
    zero_x_mean(state.w_hat);
    return run_loop(params, std::move(state), obs);
}

}  // namespace gkp
