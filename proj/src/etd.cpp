#include "gkp/etd.hpp"

#include <cmath>
#include <stdexcept>

#include "gkp/errors.hpp"

namespace gkp {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

Complex phi_series(Complex z, int i, int terms = 40) {
    // phi_i(z) = sum_k z^k / (k+i)!
    Complex sum = 0.0, zk = 1.0;
    double inv_fact = 1.0 / factorial(i);
    for (int k = 0; k < terms; ++k) {
        sum += zk * inv_fact;
        zk *= z;
        inv_fact /= static_cast<double>(k + i + 1);
    }
    return sum;
}

struct CoeffSet {
    Complex Q, f1, f2, f3;
};

// The Cox-Matthews weights as non-removable closed forms; only safe away
// from z = 0.
CoeffSet closed_forms(Complex z, double h) {
    Complex ez = std::exp(z);
    Complex z2 = z * z, z3 = z2 * z;
    CoeffSet c;
    c.Q = h * (std::exp(0.5 * z) - 1.0) / z;
    c.f1 = h * (-4.0 - z + ez * (4.0 - 3.0 * z + z2)) / z3;
    c.f2 = 2.0 * h * (2.0 + z + ez * (-2.0 + z)) / z3;
    c.f3 = h * (-4.0 - 3.0 * z - z2 + ez * (4.0 - z)) / z3;
    return c;
}

CoeffSet contour_mean(Complex z, double h, int points) {
    // For real z the contour is conjugate-symmetric, so the mean is exactly
    // real: average the upper half-circle and keep twice its real part.
    const bool real_z = z.imag() == 0.0;
    const int loop = real_z ? points / 2 : points;
    CoeffSet acc{0.0, 0.0, 0.0, 0.0};
    for (int j = 0; j < loop; ++j) {
        // half-offset keeps the removable singularity off the contour
        double theta = 2.0 * M_PI * (j + 0.5) / points;
        Complex zeta = z + Complex{std::cos(theta), std::sin(theta)};
        CoeffSet c = closed_forms(zeta, h);
        acc.Q += c.Q;
        acc.f1 += c.f1;
        acc.f2 += c.f2;
        acc.f3 += c.f3;
    }
    double inv = 1.0 / loop;
    if (real_z)
        return {acc.Q.real() * inv, acc.f1.real() * inv, acc.f2.real() * inv,
                acc.f3.real() * inv};
    return {acc.Q * inv, acc.f1 * inv, acc.f2 * inv, acc.f3 * inv};
}

}  // namespace

Complex phi(Complex z, int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("phi: index must be 1, 2 or 3");
    if (std::abs(z) < 0.5) return phi_series(z, i);
    Complex ez = std::exp(z);
    switch (i) {
        case 1: return (ez - 1.0) / z;
        case 2: return (ez - 1.0 - z) / (z * z);
        default: return (ez - 1.0 - z - 0.5 * z * z) / (z * z * z);
    }
}

EtdCoefficients contour_coefficients(const DiagonalOperator& L, double h, int points) {
    if (points < 16 || points % 2 != 0)
        throw std::invalid_argument("contour_coefficients: points must be even and >= 16");

    const Grid2D& g = *L.grid;
    const std::size_t n = g.size();
    EtdCoefficients C;
    C.h = h;
    C.E.resize(n);
    C.E2.resize(n);
    C.Q.resize(n);
    C.f1.resize(n);
    C.f2.resize(n);
    C.f3.resize(n);

    std::vector<char> done(n, 0);
    for (int my = 0; my < g.ny; ++my) {
        for (int mx = 0; mx < g.nx; ++mx) {
            std::size_t idx = g.index(mx, my);
            if (done[idx]) continue;
            Complex z = h * L.symbol[idx];

            C.E[idx] = std::exp(z);
            C.E2[idx] = std::exp(0.5 * z);
            CoeffSet c = (std::abs(z) > 1.0) ? closed_forms(z, h)
                                             : contour_mean(z, h, points);
            C.Q[idx] = c.Q;
            C.f1[idx] = c.f1;
            C.f2[idx] = c.f2;
            C.f3[idx] = c.f3;
            done[idx] = 1;

            // conjugate-pair mode shares the evaluation
            std::size_t pidx = g.index((g.nx - mx) % g.nx, (g.ny - my) % g.ny);
            if (!done[pidx] && L.symbol[pidx] == std::conj(L.symbol[idx])) {
                C.E[pidx] = std::conj(C.E[idx]);
                C.E2[pidx] = std::conj(C.E2[idx]);
                C.Q[pidx] = std::conj(C.Q[idx]);
                C.f1[pidx] = std::conj(C.f1[idx]);
                C.f2[pidx] = std::conj(C.f2[idx]);
                C.f3[pidx] = std::conj(C.f3[idx]);
                done[pidx] = 1;
            }
        }
    }
    return C;
}

SpectralField etdrk4_step(const SpectralField& state, double t,
                          const EtdCoefficients& coeffs, const NonlinearCallback& N) {
    const std::size_t n = state.coef.size();
    if (coeffs.E.size() != n)
        throw std::invalid_argument("etdrk4_step: coefficient tables do not match the grid");
    const double h = coeffs.h;

    SpectralField Nu = N(state, t);

    SpectralField a(state.grid);
    for (std::size_t j = 0; j < n; ++j)
        a.coef[j] = coeffs.E2[j] * state.coef[j] + coeffs.Q[j] * Nu.coef[j];
    SpectralField Na = N(a, t + 0.5 * h);

    SpectralField b(state.grid);
    for (std::size_t j = 0; j < n; ++j)
        b.coef[j] = coeffs.E2[j] * state.coef[j] + coeffs.Q[j] * Na.coef[j];
    SpectralField Nb = N(b, t + 0.5 * h);

    SpectralField c(state.grid);
    for (std::size_t j = 0; j < n; ++j)
        c.coef[j] = coeffs.E2[j] * a.coef[j] +
                    coeffs.Q[j] * (2.0 * Nb.coef[j] - Nu.coef[j]);
    SpectralField Nc = N(c, t + h);

    SpectralField out(state.grid);
    bool ok = true;
    for (std::size_t j = 0; j < n; ++j) {
        Complex v = coeffs.E[j] * state.coef[j] + coeffs.f1[j] * Nu.coef[j] +
                    coeffs.f2[j] * (Na.coef[j] + Nb.coef[j]) + coeffs.f3[j] * Nc.coef[j];
        ok &= std::isfinite(v.real()) && std::isfinite(v.imag());
        out.coef[j] = v;
    }
    if (!ok) throw DivergenceError("etdrk4_step: non-finite state", -1);
    return out;
}

}  // namespace gkp
