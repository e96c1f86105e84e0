#include <doctest.h>

#include <cmath>

#include "gkp/errors.hpp"
#include "gkp/fft.hpp"
#include "gkp/rescaled.hpp"
#include "gkp/spectral.hpp"

using namespace gkp;

namespace {

RescaledParams small_params(Rational n) {
    RescaledParams p;
    p.n = n;
    p.lambda = -1;
    p.grid = make_grid(64, 64, 3.0, 7.0);
    p.h = 1e-4;
    p.tau_end = 2e-3;
    return p;
}

SpectralField test_state(std::shared_ptr<const Grid2D> grid, double beta) {
    SpectralField W = forward(InitialData::gaussian_dxx(beta).w0(grid));
    zero_x_mean(W);
    return W;
}

}  // namespace

TEST_CASE("with the scaling terms off, the rescaled right-hand side is the direct one") {
    RescaledParams rp = small_params(Rational{2, 1});
    SpectralField W = test_state(rp.grid, 6.0);
    SpectralField lhs = rescaled_rhs(W, 0.0, {0.0, 0.0}, rp);

    GkpParams dp;
    dp.n = rp.n;
    dp.lambda = rp.lambda;
    dp.grid = rp.grid;
    dp.h = rp.h;
    dp.t_end = rp.tau_end;
    SpectralField rhs = nonlinear_w(W, dp);
    double m = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < lhs.coef.size(); ++j) {
        m = std::max(m, std::abs(lhs.coef[j] - rhs.coef[j]));
        scale = std::max(scale, std::abs(rhs.coef[j]));
    }
    CHECK(m < 1e-13 * scale);
}

TEST_CASE("compute_a agrees with the integration-by-parts route") {
    auto grid = make_grid(128, 128, 3.0, 3.0);
    Rational n{2, 1};
    SpectralField U_hat = derivative_x(test_state(grid, 6.0), 1);
    const double ref = norms(U_hat).l2_uy;
    double a = compute_a(U_hat, n, ref);

    // int U^{n+1} U_{eta eta xi} = -(n+1) int U^n U_xi U_{eta eta}
    RealField U = inverse(U_hat);
    RealField Ux = inverse(derivative_x(U_hat, 1));
    RealField Uyy = inverse(derivative_y(U_hat, 2));
    RealField Un = real_power(U, n.p, n.q);
    double integral = 0.0;
    for (std::size_t j = 0; j < U.values.size(); ++j)
        integral += Un.values[j] * Ux.values[j] * Uyy.values[j];
    integral *= -(n.value() + 1.0) * grid->cell_area();
    double nv = n.value();
    double expect = 2.0 * nv / ((4.0 + nv) * (nv + 1.0) * ref * ref) * integral;
    CHECK(a == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("compute_v solves the pinning system evaluated at the origin") {
    auto grid = make_grid(128, 128, 3.0, 3.0);
    Rational n{2, 1};
    const int lambda = -1;
    // data with a genuine interior minimum and no special symmetry in x
    RealField w(grid);
    const Grid2D& g = *grid;
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            double x = g.x[ix], y = g.y[iy];
            w(ix, iy) = (-2.0 * x + 0.3 * std::sin(x / 3.0)) * std::exp(-(x * x + y * y));
        }
    SpectralField W = forward(w);
    zero_x_mean(W);
    SpectralField U_hat = derivative_x(W, 1);
    auto [vx, vy] = compute_v(U_hat, n, lambda);

    const int i0 = g.nx / 2, j0 = g.ny / 2;  // x = y = 0 grid point
    double u0 = inverse(U_hat)(i0, j0);
    double uxx = inverse(derivative_x(U_hat, 2))(i0, j0);
    double uyy = inverse(derivative_y(U_hat, 2))(i0, j0);
    double uxy = inverse(derivative_y(derivative_x(U_hat, 1), 1))(i0, j0);
    double uxxxx = inverse(derivative_x(U_hat, 4))(i0, j0);
    double uxxxy = inverse(derivative_y(derivative_x(U_hat, 3), 1))(i0, j0);
    double ayyy = inverse(antiderivative_x(derivative_y(U_hat, 3)))(i0, j0);

    double un = u0 >= 0 ? std::pow(u0, n.value()) : std::pow(-u0, n.value());
    double b1 = un * uxx + uxxxx + lambda * uyy;
    double b2 = un * uxy + uxxxy + lambda * ayyy;
    CHECK(uxx * vx + uxy * vy == doctest::Approx(b1).epsilon(1e-8));
    CHECK(uxy * vx + uyy * vy == doctest::Approx(b2).epsilon(1e-8));
}

TEST_CASE("a flat state has no pinnable minimum") {
    auto grid = make_grid(32, 32, 1.0, 1.0);
    SpectralField U(grid);
    CHECK_THROWS_AS((void)compute_v(U, Rational{2, 1}, -1), DegenerateMinimumError);
}

TEST_CASE("short rescaled run produces consistent traces") {
    RescaledParams p = small_params(Rational{2, 1});
    RescaledResult res = run_rescaled(p, InitialData::gaussian_dxx(6.0));
    REQUIRE(res.reason == StopReason::completed);
    std::size_t steps = static_cast<std::size_t>(std::lround(p.tau_end / p.h));
    REQUIRE(res.tau_trace.size() == steps + 1);
    REQUIRE(res.L_trace.size() == steps + 1);
    CHECK(res.L_trace.front() == 1.0);
    CHECK(res.state.L > 0.0);
    CHECK(res.state.t_phys > 0.0);
    for (std::size_t i = 1; i < res.t_trace.size(); ++i)
        CHECK(res.t_trace[i] > res.t_trace[i - 1]);
    // trapezoid consistency between the a- and L-traces
    double L = 1.0;
    for (std::size_t i = 1; i < res.L_trace.size(); ++i) {
        L *= std::exp(0.5 * (res.a_trace[i - 1] + res.a_trace[i]) * p.h);
        CHECK(res.L_trace[i] == doctest::Approx(L).epsilon(1e-12));
    }
}

TEST_CASE("mass guard stops the rescaled run") {
    RescaledParams p = small_params(Rational{2, 1});
    p.tau_end = 0.5;
    p.mass_stop = 1e-14;
    RescaledResult res = run_rescaled(p, InitialData::gaussian_dxx(6.0));
    CHECK(res.reason == StopReason::delta_exceeded);
    CHECK(res.state.tau < p.tau_end);
}

TEST_CASE("rescale_back satisfies the norm identities") {
    auto grid = make_grid(64, 64, 3.0, 7.0);
    Rational n{2, 1};
    RescaledState st;
    st.W_hat = test_state(grid, 6.0);
    st.L = 2.5;
    SpectralField U_hat = derivative_x(st.W_hat, 1);
    double mass_u = mass(U_hat);

    auto [u, map] = rescale_back(st, n);
    CHECK(map.L == 2.5);
    CHECK(u.grid->scale_x == doctest::Approx(3.0 * 2.5));
    CHECK(u.grid->scale_y == doctest::Approx(7.0 * 2.5 * 2.5));
    double expect = std::pow(st.L, 0.5 * (3.0 - 4.0 / n.value())) * mass_u;
    CHECK(mass_quadrature(u) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("slice sampling matches the rescaled-back field on its grid") {
    auto grid = make_grid(64, 64, 3.0, 7.0);
    Rational n{4, 3};
    RescaledState st;
    st.W_hat = test_state(grid, 2.0);
    st.L = 0.8;
    auto [u, map] = rescale_back(st, n);
    const Grid2D& g = *u.grid;
    std::vector<double> xs(g.nx);
    for (int ix = 0; ix < g.nx; ++ix) xs[ix] = map.x_m + g.x[ix];
    std::vector<double> us = sample_slice_y0(st, n, xs);
    double m = 0.0, scale = 0.0;
    for (int ix = 0; ix < g.nx; ++ix) {
        m = std::max(m, std::fabs(us[ix] - u(ix, g.ny / 2)));
        scale = std::max(scale, std::fabs(u(ix, g.ny / 2)));
    }
    CHECK(m < 1e-10 * scale);
}
