#include "gkp/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace gkp {

namespace {

// Apply per-column (x) multipliers.
SpectralField apply_x_multiplier(const SpectralField& F, const ComplexVec& mult) {
    SpectralField out(F.grid);
    const Grid2D& g = *F.grid;
    for (int my = 0; my < g.ny; ++my) {
        const Complex* src = F.coef.data() + g.index(0, my);
        Complex* dst = out.coef.data() + g.index(0, my);
        for (int mx = 0; mx < g.nx; ++mx) dst[mx] = src[mx] * mult[mx];
    }
    return out;
}

}  // namespace

SpectralField derivative_x(const SpectralField& F, int order) {
    if (order < 1 || order > 4)
        throw std::invalid_argument("derivative_x: order must be in 1..4");
    const Grid2D& g = *F.grid;
    ComplexVec mult(g.nx);
    for (int mx = 0; mx < g.nx; ++mx)
        mult[mx] = std::pow(Complex{0.0, g.kx[mx]}, order);
    if (order % 2 == 1) mult[g.nx / 2] = 0.0;  // Nyquist
    return apply_x_multiplier(F, mult);
}

SpectralField derivative_y(const SpectralField& F, int order) {
    if (order < 1 || order > 4)
        throw std::invalid_argument("derivative_y: order must be in 1..4");
    const Grid2D& g = *F.grid;
    SpectralField out(F.grid);
    for (int my = 0; my < g.ny; ++my) {
        Complex m = std::pow(Complex{0.0, g.ky[my]}, order);
        if (order % 2 == 1 && my == g.ny / 2) m = 0.0;
        const Complex* src = F.coef.data() + g.index(0, my);
        Complex* dst = out.coef.data() + g.index(0, my);
        for (int mx = 0; mx < g.nx; ++mx) dst[mx] = src[mx] * m;
    }
    return out;
}

double default_antiderivative_delta(const Grid2D& grid) {
    return 1e-12 / grid.scale_x;  // 1e-12 * smallest nonzero |kx|
}

SpectralField antiderivative_x(const SpectralField& F, double delta) {
    const Grid2D& g = *F.grid;
    if (delta < 0.0) delta = default_antiderivative_delta(g);
    ComplexVec mult(g.nx);
    for (int mx = 0; mx < g.nx; ++mx)
        mult[mx] = Complex{0.0, -1.0} / Complex{g.kx[mx], delta};
    return apply_x_multiplier(F, mult);
}

double regularized_recip(double kx, double delta) {
    return kx / (kx * kx + delta * delta);
}

void dealias_23(SpectralField& F) {
    const Grid2D& g = *F.grid;
    const int cut_x = g.nx / 3, cut_y = g.ny / 3;
    for (int my = 0; my < g.ny; ++my) {
        int iy = my < g.ny / 2 ? my : g.ny - my;
        bool kill_row = iy > cut_y;
        Complex* row = F.coef.data() + g.index(0, my);
        for (int mx = 0; mx < g.nx; ++mx) {
            int ix = mx < g.nx / 2 ? mx : g.nx - mx;
            if (kill_row || ix > cut_x) row[mx] = 0.0;
        }
    }
}

void zero_x_mean(SpectralField& F) {
    const Grid2D& g = *F.grid;
    for (int my = 0; my < g.ny; ++my) F.coef[g.index(0, my)] = 0.0;
}

}  // namespace gkp
