#include "gkp/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "gkp/fft.hpp"
#include "gkp/spectral.hpp"

namespace gkp {

void NormTrace::push(double time, double value) {
    if (!t.empty() && time <= t.back())
        throw std::invalid_argument("NormTrace: times must be strictly increasing");
    t.push_back(time);
    v.push_back(value);
}

namespace {

double relative_drift(double value, double reference) {
    if (reference == 0.0) return value == 0.0 ? 0.0 : INFINITY;
    return std::fabs(value / reference - 1.0);
}

// (f-1, f0, f+1) parabola vertex offset in units of the grid spacing.
double parabolic_offset(double fm, double f0, double fp) {
    double denom = fm - 2.0 * f0 + fp;
    if (denom <= 0.0) return 0.0;
    return 0.5 * (fm - fp) / denom;
}

}  // namespace

double mass(const SpectralField& u_hat) {
    const Grid2D& g = *u_hat.grid;
    double s = 0.0;
    for (const auto& c : u_hat.coef) s += std::norm(c);
    return std::sqrt(s * g.cell_area() / static_cast<double>(g.size()));
}

double mass_quadrature(const RealField& u) {
    double s = 0.0;
    for (double v : u.values) s += v * v;
    return std::sqrt(s * u.grid->cell_area());
}

double energy(const SpectralField& u_hat, Rational n, int lambda, double delta) {
    const Grid2D& g = *u_hat.grid;
    if (delta < 0.0) delta = default_antiderivative_delta(g);
    const double w = g.cell_area() / static_cast<double>(g.size());

    double grad = 0.0, anti = 0.0;
    for (int my = 0; my < g.ny; ++my) {
        double ky2 = g.ky[my] * g.ky[my];
        const Complex* row = u_hat.coef.data() + g.index(0, my);
        for (int mx = 0; mx < g.nx; ++mx) {
            double m2 = std::norm(row[mx]);
            double kx = g.kx[mx];
            grad += kx * kx * m2;
            anti += ky2 / (kx * kx + delta * delta) * m2;
        }
    }

    RealField u = inverse(u_hat);
    RealField up = real_power(u, n.p + 2 * n.q, n.q);
    double pot = 0.0;
    for (double v : up.values) pot += v;
    pot *= g.cell_area();

    const double np1 = n.value() + 1.0, np2 = n.value() + 2.0;
    return 0.5 * w * grad - pot / (np1 * np2) - 0.5 * lambda * w * anti;
}

double energy_quadrature(const SpectralField& u_hat, Rational n, int lambda,
                         double delta) {
    const Grid2D& g = *u_hat.grid;
    if (delta < 0.0) delta = default_antiderivative_delta(g);

    RealField ux = inverse(derivative_x(u_hat, 1));
    RealField vy = inverse(antiderivative_x(derivative_y(u_hat, 1), delta));
    RealField u = inverse(u_hat);
    RealField up = real_power(u, n.p + 2 * n.q, n.q);

    double grad = 0.0, anti = 0.0, pot = 0.0;
    for (std::size_t j = 0; j < u.values.size(); ++j) {
        grad += ux.values[j] * ux.values[j];
        anti += vy.values[j] * vy.values[j];
        pot += up.values[j];
    }
    const double np1 = n.value() + 1.0, np2 = n.value() + 2.0;
    return g.cell_area() * (0.5 * grad - pot / (np1 * np2) - 0.5 * lambda * anti);
}

NormSet norms(const SpectralField& u_hat, bool refine_minimum) {
    const Grid2D& g = *u_hat.grid;
    const double w = g.cell_area() / static_cast<double>(g.size());

    double l2x = 0.0, l2y = 0.0;
    for (int my = 0; my < g.ny; ++my) {
        double ky2 = g.ky[my] * g.ky[my];
        const Complex* row = u_hat.coef.data() + g.index(0, my);
        for (int mx = 0; mx < g.nx; ++mx) {
            double m2 = std::norm(row[mx]);
            l2x += g.kx[mx] * g.kx[mx] * m2;
            l2y += ky2 * m2;
        }
    }

    RealField u = inverse(u_hat);
    double linf = 0.0, umin = u.values[0];
    int ix_min = 0, iy_min = 0;
    for (int iy = 0; iy < g.ny; ++iy) {
        const double* row = u.values.data() + g.index(0, iy);
        for (int ix = 0; ix < g.nx; ++ix) {
            double v = row[ix];
            double a = std::fabs(v);
            if (a > linf) linf = a;
            if (v < umin) { umin = v; ix_min = ix; iy_min = iy; }
        }
    }

    double xm = g.x[ix_min], ym = g.y[iy_min];
    if (refine_minimum) {
        auto at = [&](int ix, int iy) {
            return u.values[g.index((ix + g.nx) % g.nx, (iy + g.ny) % g.ny)];
        };
        xm += g.dx() * parabolic_offset(at(ix_min - 1, iy_min), umin, at(ix_min + 1, iy_min));
        ym += g.dy() * parabolic_offset(at(ix_min, iy_min - 1), umin, at(ix_min, iy_min + 1));
    }

    return NormSet{linf, std::sqrt(l2y * w), std::sqrt(l2x * w), umin, xm, ym};
}

std::pair<double, double> resolution_indicator(const SpectralField& u_hat) {
    const Grid2D& g = *u_hat.grid;
    double gmax = 0.0, tx = 0.0, ty = 0.0;
    const int band_x = g.nx / 3, band_y = g.ny / 3;
    for (int my = 0; my < g.ny; ++my) {
        int iy = my < g.ny / 2 ? my : g.ny - my;
        const Complex* row = u_hat.coef.data() + g.index(0, my);
        for (int mx = 0; mx < g.nx; ++mx) {
            int ix = mx < g.nx / 2 ? mx : g.nx - mx;
            double a = std::abs(row[mx]);
            if (a > gmax) gmax = a;
            if (ix >= band_x && a > tx) tx = a;
            if (iy >= band_y && a > ty) ty = a;
        }
    }
    if (gmax == 0.0) return {0.0, 0.0};
    return {tx / gmax, ty / gmax};
}

DiagnosticsRecord compute_record(const SpectralField& u_hat, double t, Rational n,
                                 int lambda, double reference_mass,
                                 double reference_energy, bool refine_minimum) {
    DiagnosticsRecord r;
    r.t = t;
    r.mass = mass(u_hat);
    r.energy = energy(u_hat, n, lambda);
    r.delta_mass = relative_drift(r.mass, reference_mass);
    r.delta_energy = relative_drift(r.energy, reference_energy);
    NormSet ns = norms(u_hat, refine_minimum);
    r.linf_u = ns.linf_u;
    r.l2_uy = ns.l2_uy;
    r.l2_ux = ns.l2_ux;
    r.u_min = ns.u_min;
    r.x_min = ns.x_min;
    r.y_min = ns.y_min;
    auto [tx, ty] = resolution_indicator(u_hat);
    r.tail_x = tx;
    r.tail_y = ty;
    return r;
}

}  // namespace gkp
