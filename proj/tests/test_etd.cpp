#include <doctest.h>

#include <cmath>
#include <random>

#include "gkp/errors.hpp"
#include "gkp/etd.hpp"

using namespace gkp;

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Independent phi oracle: plain 40-term Taylor series.
Complex phi_oracle(Complex z, int i) {
    Complex sum = 0.0, zk = 1.0;
    for (int k = 0; k < 40; ++k) {
        sum += zk / factorial(k + i);
        zk *= z;
    }
    return sum;
}

DiagonalOperator uniform_operator(std::shared_ptr<const Grid2D> grid, Complex s) {
    DiagonalOperator L(grid);
    for (auto& v : L.symbol) v = s;
    return L;
}

}  // namespace

TEST_CASE("phi matches the series oracle across the small/large switch") {
    for (double m : {1e-8, 1e-4, 0.1, 0.49, 0.51, 1.0, 2.0}) {
        for (double arg : {0.0, 1.0, 2.0, 4.0}) {
            Complex z = m * std::exp(Complex{0.0, arg});
            for (int i = 1; i <= 3; ++i) {
                Complex expect = phi_oracle(z, i);
                CHECK(std::abs(phi(z, i) - expect) < 1e-13 * std::abs(expect));
            }
        }
    }
}

TEST_CASE("contour coefficients match phi-combinations for imaginary symbols") {
    // f1 = h(phi1 - 3 phi2 + 4 phi3), f2 = h(2 phi2 - 4 phi3),
    // f3 = h(4 phi3 - phi2), Q = (h/2) phi1(z/2): checked against the
    // series oracle over the stiffness range where cancellation bites.
    auto grid = make_grid(8, 8, 1.0, 1.0);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> logmag(-8.0, 0.0);
    std::uniform_int_distribution<int> sign(0, 1);
    const double h = 1.0;

    double worst = 0.0;
    const int rounds = 160;  // 160 * 64 modes > 1e4 samples
    for (int r = 0; r < rounds; ++r) {
        DiagonalOperator L(grid);
        std::vector<Complex> zs(L.symbol.size());
        for (std::size_t j = 0; j < L.symbol.size(); ++j) {
            double mag = std::pow(10.0, logmag(rng));
            zs[j] = Complex{0.0, sign(rng) ? mag : -mag};
            L.symbol[j] = zs[j];
        }
        EtdCoefficients C = contour_coefficients(L, h);
        for (std::size_t j = 0; j < zs.size(); ++j) {
            Complex z = h * zs[j];
            Complex p1 = phi_oracle(z, 1), p2 = phi_oracle(z, 2), p3 = phi_oracle(z, 3);
            auto rel = [](Complex got, Complex expect) {
                return std::abs(got - expect) / std::abs(expect);
            };
            worst = std::max(worst, rel(C.f1[j], h * (p1 - 3.0 * p2 + 4.0 * p3)));
            worst = std::max(worst, rel(C.f2[j], h * (2.0 * p2 - 4.0 * p3)));
            worst = std::max(worst, rel(C.f3[j], h * (4.0 * p3 - p2)));
            worst = std::max(worst, rel(C.Q[j], 0.5 * h * phi_oracle(0.5 * z, 1)));
        }
    }
    CHECK(worst < 1e-11);
}

TEST_CASE("coefficient tables preserve conjugate symmetry") {
    auto grid = make_grid(16, 16, 1.0, 1.0);
    DiagonalOperator L(grid);
    const Grid2D& g = *grid;
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int my = 0; my < g.ny; ++my)
        for (int mx = 0; mx < g.nx; ++mx) {
            int px = (g.nx - mx) % g.nx, py = (g.ny - my) % g.ny;
            std::size_t idx = g.index(mx, my), pidx = g.index(px, py);
            if (pidx < idx) L.symbol[idx] = std::conj(L.symbol[pidx]);
            else if (pidx == idx) L.symbol[idx] = Complex{dist(rng), 0.0};
            else L.symbol[idx] = Complex{0.0, dist(rng)};
        }
    EtdCoefficients C = contour_coefficients(L, 0.1);
    for (int my = 0; my < g.ny; ++my)
        for (int mx = 0; mx < g.nx; ++mx) {
            std::size_t idx = g.index(mx, my);
            std::size_t pidx = g.index((g.nx - mx) % g.nx, (g.ny - my) % g.ny);
            CHECK(C.f1[idx] == std::conj(C.f1[pidx]));
            CHECK(C.E[idx] == std::conj(C.E[pidx]));
        }
}

TEST_CASE("zero linear part reduces to classical RK4") {
    auto grid = make_grid(8, 8, 1.0, 1.0);
    const double h = 0.01;
    EtdCoefficients C = contour_coefficients(uniform_operator(grid, 0.0), h);
    CHECK(C.f1[0].real() == doctest::Approx(h / 6.0).epsilon(1e-12));
    CHECK(C.f2[0].real() == doctest::Approx(h / 3.0).epsilon(1e-12));
    CHECK(C.f3[0].real() == doctest::Approx(h / 6.0).epsilon(1e-12));
    CHECK(C.Q[0].real() == doctest::Approx(h / 2.0).epsilon(1e-12));

    // u' = i u solved with N = i u and L = 0: ETDRK4 must equal the
    // classical RK4 recursion exactly.
    NonlinearCallback N = [](const SpectralField& w, double) {
        SpectralField out(w.grid);
        for (std::size_t j = 0; j < w.coef.size(); ++j)
            out.coef[j] = Complex{0.0, 1.0} * w.coef[j];
        return out;
    };
    SpectralField u(grid);
    for (auto& c : u.coef) c = Complex{1.0, 0.0};
    Complex y{1.0, 0.0};
    const Complex lam{0.0, 1.0};
    for (int m = 0; m < 200; ++m) {
        u = etdrk4_step(u, m * h, C, N);
        Complex k1 = lam * y;
        Complex k2 = lam * (y + 0.5 * h * k1);
        Complex k3 = lam * (y + 0.5 * h * k2);
        Complex k4 = lam * (y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    CHECK(std::abs(u.coef[5] - y) < 1e-13);
}

TEST_CASE("fourth-order self-convergence on a forced oscillator") {
    // u' = i u + sin(t) on every mode; Richardson ratio ~ 16.
    auto grid = make_grid(8, 8, 1.0, 1.0);
    DiagonalOperator L = uniform_operator(grid, Complex{0.0, 1.0});
    NonlinearCallback N = [](const SpectralField& w, double t) {
        SpectralField out(w.grid);
        for (auto& c : out.coef) c = Complex{std::sin(t), 0.0};
        return out;
    };
    auto solve = [&](double h, int steps) {
        EtdCoefficients C = contour_coefficients(L, h);
        SpectralField u(grid);
        for (auto& c : u.coef) c = Complex{1.0, 0.0};
        for (int m = 0; m < steps; ++m) u = etdrk4_step(u, m * h, C, N);
        return u.coef[3];
    };
    Complex ref = solve(1.0 / 1024.0, 1024);
    double e1 = std::abs(solve(1.0 / 32.0, 32) - ref);
    double e2 = std::abs(solve(1.0 / 64.0, 64) - ref);
    double ratio = e1 / e2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("non-finite stages are reported") {
    auto grid = make_grid(8, 8, 1.0, 1.0);
    EtdCoefficients C = contour_coefficients(uniform_operator(grid, 0.0), 0.1);
    NonlinearCallback N = [](const SpectralField& w, double) {
        SpectralField out(w.grid);
        for (auto& c : out.coef) c = Complex{INFINITY, 0.0};
        return out;
    };
    SpectralField u(grid);
    CHECK_THROWS_AS((void)etdrk4_step(u, 0.0, C, N), DivergenceError);
}
