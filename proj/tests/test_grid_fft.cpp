#include <doctest.h>

#include <cmath>
#include <random>

#include "gkp/errors.hpp"
#include "gkp/fft.hpp"

using namespace gkp;

namespace {

RealField random_field(std::shared_ptr<const Grid2D> grid, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    RealField f(grid);
    for (auto& v : f.values) v = dist(rng);
    return f;
}

// Plain O(N^2) DFT in the continuous-phase convention.
Complex dft_at(const RealField& f, int mx, int my) {
    const Grid2D& g = *f.grid;
    Complex s = 0.0;
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix)
            s += f(ix, iy) *
                 std::exp(Complex{0.0, -(g.kx[mx] * g.x[ix] + g.ky[my] * g.y[iy])});
    return s;
}

}  // namespace

TEST_CASE("grid tables") {
    Grid2D g(8, 16, 2.0, 3.0);
    CHECK(g.x[0] == doctest::Approx(-2.0 * M_PI));
    CHECK(g.x[4] == doctest::Approx(0.0));
    CHECK(g.y[8] == doctest::Approx(0.0));
    CHECK(g.kx[1] == doctest::Approx(0.5));
    CHECK(g.kx[7] == doctest::Approx(-0.5));
    CHECK(g.kx[4] == doctest::Approx(-2.0));
    CHECK(g.ky[1] == doctest::Approx(1.0 / 3.0));
    CHECK(g.cell_area() == doctest::Approx(g.dx() * g.dy()));
    CHECK_THROWS(Grid2D(7, 16, 1.0, 1.0));   // not a power of two
    CHECK_THROWS(Grid2D(4, 16, 1.0, 1.0));   // too small
    CHECK_THROWS(Grid2D(8, 16, -1.0, 1.0));  // bad scale
}

TEST_CASE("forward matches the direct DFT sum") {
    auto grid = make_grid(16, 32, 1.5, 0.75);
    RealField f = random_field(grid, 11);
    SpectralField F = forward(f);
    double scale = 0.0;
    for (const auto& c : F.coef) scale = std::max(scale, std::abs(c));
    for (int my : {0, 1, 7, 16, 31})
        for (int mx : {0, 1, 5, 8, 15})
            CHECK(std::abs(F.at(mx, my) - dft_at(f, mx, my)) < 1e-11 * scale);
}

TEST_CASE("zero mode is the grid sum and constants transform cleanly") {
    auto grid = make_grid(32, 16, 2.0, 2.0);
    RealField f(grid);
    for (auto& v : f.values) v = 3.25;
    SpectralField F = forward(f);
    CHECK(F.at(0, 0).real() == doctest::Approx(3.25 * grid->size()));
    double off = 0.0;
    for (int my = 0; my < grid->ny; ++my)
        for (int mx = 0; mx < grid->nx; ++mx)
            if (mx || my) off = std::max(off, std::abs(F.at(mx, my)));
    CHECK(off < 1e-9);
}

TEST_CASE("round trip is tight") {
    auto grid = make_grid(64, 32, 3.0, 1.0);
    RealField f = random_field(grid, 23);
    RealField g = inverse(forward(f));
    double err = 0.0;
    for (std::size_t j = 0; j < f.values.size(); ++j)
        err = std::max(err, std::fabs(f.values[j] - g.values[j]));
    CHECK(err < 1e-13);
}

TEST_CASE("Parseval") {
    auto grid = make_grid(32, 32, 2.0, 5.0);
    RealField f = random_field(grid, 31);
    SpectralField F = forward(f);
    double phys = 0.0;
    for (double v : f.values) phys += v * v;
    phys *= grid->cell_area();
    double spec = 0.0;
    for (const auto& c : F.coef) spec += std::norm(c);
    spec *= grid->cell_area() / static_cast<double>(grid->size());
    CHECK(phys == doctest::Approx(spec).epsilon(1e-12));
}

TEST_CASE("hermitian symmetry of real-field transforms") {
    auto grid = make_grid(32, 32, 1.0, 1.0);
    SpectralField F = forward(random_field(grid, 5));
    CHECK(F.hermitian_defect() < 1e-10);
}

TEST_CASE("non-symmetric spectra are rejected on inversion") {
    auto grid = make_grid(16, 16, 1.0, 1.0);
    SpectralField F(grid);
    F.at(3, 2) = Complex{1.0, 0.5};  // no conjugate partner
    CHECK_THROWS_AS((void)inverse(F), AsymmetryError);
}

TEST_CASE("non-finite input is rejected") {
    auto grid = make_grid(16, 16, 1.0, 1.0);
    RealField f(grid);
    f(3, 3) = NAN;
    CHECK_FALSE(f.finite());
    CHECK_THROWS_AS((void)forward(f), InvalidFieldError);
}

TEST_CASE("real_power branches") {
    auto grid = make_grid(8, 8, 1.0, 1.0);
    RealField f(grid);
    f(0, 0) = -2.0;
    f(1, 0) = 3.0;
    SUBCASE("integer exponent") {
        RealField g = real_power(f, 3, 1);
        CHECK(g(0, 0) == doctest::Approx(-8.0));
        CHECK(g(1, 0) == doctest::Approx(27.0));
    }
    SUBCASE("odd root keeps the sign") {
        RealField g = real_power(f, 7, 3);
        CHECK(g(0, 0) == doctest::Approx(-std::pow(2.0, 7.0 / 3.0)));
        CHECK(g(1, 0) == doctest::Approx(std::pow(3.0, 7.0 / 3.0)));
    }
    SUBCASE("even denominator rejected") {
        CHECK_THROWS_AS((void)real_power(f, 1, 2), UnsupportedExponentError);
    }
}
