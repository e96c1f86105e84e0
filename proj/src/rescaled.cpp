#include "gkp/rescaled.hpp"

#include <cmath>

#include "gkp/errors.hpp"
#include "gkp/fft.hpp"
#include "gkp/spectral.hpp"

namespace gkp {

double RescaledParams::antiderivative_delta() const {
    return delta_scale / grid->scale_x;
}

void RescaledParams::validate() const {
    if (!grid) throw ConfigError("RescaledParams: no grid");
    if (n.q % 2 == 0) throw ConfigError("RescaledParams: q must be odd");
    if (lambda != 1 && lambda != -1) throw ConfigError("RescaledParams: lambda must be +-1");
    if (!(h > 0.0)) throw ConfigError("RescaledParams: h must be positive");
}

namespace {

double real_power_scalar(double v, long p, long q) {
    double m = std::pow(std::fabs(v), static_cast<double>(p) / q);
    return (v < 0.0 && p % 2 != 0) ? -m : m;
}

// int U^{n+1} U_{eta eta xi} with the factors already in hand.
double a_from_parts(const RealField& up, const RealField& u_eta_eta_xi, Rational n,
                    double ref_norm) {
    const Grid2D& g = *up.grid;
    double integral = 0.0;
    for (std::size_t j = 0; j < up.values.size(); ++j)
        integral += up.values[j] * u_eta_eta_xi.values[j];
    integral *= g.cell_area();
    double nv = n.value();
    return 2.0 * nv / ((4.0 + nv) * (nv + 1.0) * ref_norm * ref_norm) * integral;
}

SpectralField d_eta_eta_xi(const SpectralField& U_hat) {
    return derivative_x(derivative_y(U_hat, 2), 1);
}

}  // namespace

double compute_a(const SpectralField& U_hat, Rational n, double ref_norm) {
    if (!(ref_norm > 0.0)) throw std::invalid_argument("compute_a: ref_norm must be positive");
    RealField U = inverse(U_hat);
    RealField up = real_power(U, n.p + n.q, n.q);
    RealField ueex = inverse(d_eta_eta_xi(U_hat));
    return a_from_parts(up, ueex, n, ref_norm);
}

std::pair<double, double> compute_v(const SpectralField& U_hat, Rational n, int lambda) {
    const Grid2D& g = *U_hat.grid;
    const double delta = default_antiderivative_delta(g);
    const double inv_n = 1.0 / static_cast<double>(g.size());

    // point values at xi = eta = 0 as weighted coefficient sums
    double u0 = 0, uxx = 0, uxy = 0, uyy = 0, uxxxx = 0, uxxxy = 0, anti_yyy = 0;
    for (int my = 0; my < g.ny; ++my) {
        double ky = g.ky[my];
        const Complex* row = U_hat.coef.data() + g.index(0, my);
        for (int mx = 0; mx < g.nx; ++mx) {
            double kx = g.kx[mx];
            Complex c = row[mx];
            u0 += c.real();
            uxx += (-kx * kx * c).real();
            uxy += (-kx * ky * c).real();
            uyy += (-ky * ky * c).real();
            uxxxx += (kx * kx * kx * kx * c).real();
            uxxxy += (Complex{0.0, 1.0} * kx * kx * kx * Complex{0.0, 1.0} * ky * c).real();
            // dxi^{-1} U_etaetaeta: (-i r(kx)) * (i ky)^3 = -r(kx) ky^3 ... x (i)
            anti_yyy += (Complex{0.0, -regularized_recip(kx, delta)} *
                         Complex{0.0, -ky * ky * ky} * c)
                            .real();
        }
    }
    u0 *= inv_n; uxx *= inv_n; uxy *= inv_n; uyy *= inv_n;
    uxxxx *= inv_n; uxxxy *= inv_n; anti_yyy *= inv_n;

    double det = uxx * uyy - uxy * uxy;
    double scale = std::max({std::fabs(uxx), std::fabs(uxy), std::fabs(uyy)});
    if (!(std::fabs(det) > 1e-12 * scale * scale))
        throw DegenerateMinimumError("compute_v: singular Hessian at the pinned minimum");

    double un = real_power_scalar(u0, n.p, n.q);
    double b1 = un * uxx + uxxxx + lambda * uyy;
    double b2 = un * uxy + uxxxy + lambda * anti_yyy;
    double vx = (b1 * uyy - b2 * uxy) / det;
    double vy = (uxx * b2 - uxy * b1) / det;
    return {vx, vy};
}

SpectralField rescaled_rhs(const SpectralField& W_hat, double a,
                           std::pair<double, double> v, const RescaledParams& params) {
    const Grid2D& g = *params.grid;
    const Rational n = params.n;
    const double delta = params.antiderivative_delta();

    SpectralField U_hat = derivative_x(W_hat, 1);
    RealField U = inverse(U_hat);
    RealField up = real_power(U, n.p + n.q, n.q);
    SpectralField N = forward(up);
    const double nl_scale = -1.0 / (n.value() + 1.0);
    for (auto& c : N.coef) c *= nl_scale;

    if (a != 0.0 || v.first != 0.0 || v.second != 0.0) {
        RealField Ux = inverse(derivative_x(U_hat, 1));
        RealField Uy = inverse(derivative_y(U_hat, 1));
        RealField S(params.grid);
        const double two_over_n = 2.0 / n.value();
        for (int iy = 0; iy < g.ny; ++iy) {
            double eta = g.y[iy];
            for (int ix = 0; ix < g.nx; ++ix) {
                std::size_t j = g.index(ix, iy);
                S.values[j] = a * (two_over_n * U.values[j] + g.x[ix] * Ux.values[j] +
                                   2.0 * eta * Uy.values[j]) +
                              v.first * Ux.values[j] + v.second * Uy.values[j];
            }
        }
        SpectralField Sh = forward(S);
        // pull back into the W-equation by one xi-antiderivative
        for (int my = 0; my < g.ny; ++my) {
            Complex* nrow = N.coef.data() + g.index(0, my);
            const Complex* srow = Sh.coef.data() + g.index(0, my);
            for (int mx = 0; mx < g.nx; ++mx)
                nrow[mx] += Complex{0.0, -regularized_recip(g.kx[mx], delta)} * srow[mx];
        }
    }
    zero_x_mean(N);
    if (params.dealias) dealias_23(N);
    return N;
}

RescaledResult run_rescaled(const RescaledParams& params, const InitialData& U0,
                            const Observers& obs) {
    params.validate();
    const Grid2D& g = *params.grid;
    const Rational n = params.n;
    const double nv = n.value();

    RescaledState state;
    state.W_hat = forward(U0.w0(params.grid));
    zero_x_mean(state.W_hat);

    SpectralField Uh0 = derivative_x(state.W_hat, 1);
    const double ref_norm = norms(Uh0).l2_uy;  // ||U_eta|| frozen at tau = 0
    const double M0 = mass(Uh0);               // physical mass at L = 1
    const double E0 = energy(Uh0, n, params.lambda, params.antiderivative_delta());

    DiagonalOperator L_op = linear_symbol(g, params.lambda, params.antiderivative_delta());
    L_op.grid = params.grid;
    EtdCoefficients coeffs = contour_coefficients(L_op, params.h, params.contour_points);

    const bool full = params.closure.mode == RescaleClosure::Mode::full;

    NonlinearCallback N = [&](const SpectralField& W, double) {
        SpectralField Uh = derivative_x(W, 1);
        double a = compute_a(Uh, n, ref_norm);
        std::pair<double, double> v{0.0, 0.0};
        if (full) v = compute_v(Uh, n, params.lambda);
        return rescaled_rhs(W, a, v, params);
    };

    RescaledResult result;
    auto push_traces = [&](double a) {
        result.tau_trace.push_back(state.tau);
        result.a_trace.push_back(a);
        result.L_trace.push_back(state.L);
        result.t_trace.push_back(state.t_phys);
    };

    // record physical-frame mass/energy on top of the U-frame norms
    auto emit = [&](const SpectralField& Uh) {
        DiagnosticsRecord r = compute_record(Uh, state.tau, n, params.lambda, 1.0, 1.0);
        double mass_u = r.mass;
        r.mass = std::pow(state.L, 0.5 * (3.0 - 4.0 / nv)) * mass_u;
        r.energy = energy(Uh, n, params.lambda, params.antiderivative_delta()) /
                   std::pow(state.L, 4.0 / nv - 1.0);
        r.delta_mass = M0 == 0.0 ? 0.0 : std::fabs(r.mass / M0 - 1.0);
        r.delta_energy = E0 == 0.0 ? 0.0 : std::fabs(r.energy / E0 - 1.0);
        if (obs.on_record) obs.on_record(r);
        return r;
    };

    double a_prev = compute_a(Uh0, n, ref_norm);
    push_traces(a_prev);
    emit(Uh0);

    std::pair<double, double> v_prev{0.0, 0.0};
    if (full) v_prev = compute_v(Uh0, n, params.lambda);

    const long total = std::lround(params.tau_end / params.h);
    for (long m = 0; m < total; ++m) {
        SpectralField next;
        try {
            next = etdrk4_step(state.W_hat, state.tau, coeffs, N);
        } catch (const Error&) {
            result.state = std::move(state);
            result.reason = StopReason::diverged;
            return result;
        }
        state.W_hat = std::move(next);
        state.tau = (m + 1) * params.h;
        ++state.step_index;

        SpectralField Uh = derivative_x(state.W_hat, 1);
        double a_cur = compute_a(Uh, n, ref_norm);
        double L_new = state.L * std::exp(0.5 * (a_prev + a_cur) * params.h);
        state.t_phys += 0.5 * (state.L * state.L * state.L + L_new * L_new * L_new) * params.h;
        if (full) {
            auto v_cur = compute_v(Uh, n, params.lambda);
            state.x_m += 0.5 * (v_prev.first * state.L + v_cur.first * L_new) * params.h;
            state.y_m += 0.5 * (v_prev.second * state.L * state.L +
                                v_cur.second * L_new * L_new) * params.h;
            v_prev = v_cur;
        }
        state.L = L_new;
        a_prev = a_cur;
        push_traces(a_cur);

        bool last = (m == total - 1);
        if (obs.diag_stride > 0 && ((m + 1) % obs.diag_stride == 0 || last)) {
            DiagnosticsRecord r = emit(Uh);
            if (!std::isfinite(r.linf_u)) {
                result.state = std::move(state);
                result.reason = StopReason::diverged;
                return result;
            }
            if (r.delta_mass > params.mass_stop) {
                result.state = std::move(state);
                result.reason = StopReason::delta_exceeded;
                return result;
            }
        }
    }
    result.state = std::move(state);
    result.reason = StopReason::completed;
    return result;
}

std::pair<RealField, CoordinateMap> rescale_back(const RescaledState& state, Rational n) {
    if (!(state.L > 0.0)) throw std::invalid_argument("rescale_back: L must be positive");
    const Grid2D& g = *state.W_hat.grid;
    RealField U = inverse(derivative_x(state.W_hat, 1));

    auto grid = make_grid(g.nx, g.ny, g.scale_x * state.L,
                          g.scale_y * state.L * state.L);
    RealField u(grid);
    const double amp = std::pow(state.L, -2.0 / n.value());
    for (std::size_t j = 0; j < u.values.size(); ++j) u.values[j] = amp * U.values[j];
    return {std::move(u), CoordinateMap{state.x_m, state.y_m, state.L}};
}

std::vector<double> sample_slice_y0(const RescaledState& state, Rational n,
                                    const std::vector<double>& xs) {
    const Grid2D& g = *state.W_hat.grid;
    SpectralField Uh = derivative_x(state.W_hat, 1);

    // collapse eta at eta = 0: g(kxi) = (1/ny) sum_ky U_hat
    std::vector<Complex> line(g.nx, Complex{0.0, 0.0});
    for (int my = 0; my < g.ny; ++my) {
        const Complex* row = Uh.coef.data() + g.index(0, my);
        for (int mx = 0; mx < g.nx; ++mx) line[mx] += row[mx];
    }
    for (auto& c : line) c /= static_cast<double>(g.ny);

    const double amp = std::pow(state.L, -2.0 / n.value());
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double xi = (xs[i] - state.x_m) / state.L;
        Complex s = 0.0;
        for (int mx = 0; mx < g.nx; ++mx) {
            if (mx == g.nx / 2) continue;  // drop the unpaired Nyquist mode
            s += line[mx] * std::exp(Complex{0.0, g.kx[mx] * xi});
        }
        out[i] = amp * s.real() / static_cast<double>(g.nx);
    }
    return out;
}

}  // namespace gkp
