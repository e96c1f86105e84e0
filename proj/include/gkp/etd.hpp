#pragma once

#include <functional>

#include "gkp/field.hpp"

namespace gkp {

// Diagonal linear operator in Fourier space: one complex symbol per mode.
struct DiagonalOperator {
    std::shared_ptr<const Grid2D> grid;
    ComplexVec symbol;

    DiagonalOperator() = default;
    explicit DiagonalOperator(std::shared_ptr<const Grid2D> g)
        : grid(std::move(g)), symbol(grid->size(), Complex{0.0, 0.0}) {}
};

// phi_i(z) = (1/(i-1)!) int_0^1 e^{(1-s)z} s^{i-1} ds, i in {1,2,3}.
// Series evaluation for small |z| keeps it cancellation-safe.
Complex phi(Complex z, int i);

// Precomputed per-mode ETDRK4 arrays for a fixed step h.
//   E  = e^{hL},  E2 = e^{hL/2},  Q = (h/2) phi1(hL/2)
//   f1 = h(-4 - z + e^z(4 - 3z + z^2))/z^3         -> h/6  as z -> 0
//   f2 = 2h(2 + z + e^z(-2 + z))/z^3               -> h/3  (2h/3 over both middle stages)
//   f3 = h(-4 - 3z - z^2 + e^z(4 - z))/z^3         -> h/6
// with z = hL. The update is
//   u+ = E u + f1 N(u) + f2 (N(a)+N(b)) + f3 N(c),
// which reduces to classical RK4 on the nonlinearity when L = 0.
struct EtdCoefficients {
    double h = 0.0;
    ComplexVec E, E2, Q, f1, f2, f3;
};

// Coefficients by averaging the closed forms over `points` equispaced
// points on the unit circle centered at each hL entry (exact by the mean
// value property); direct closed-form evaluation where |hL| > 1.
// Conjugate-pair modes share one evaluation.
EtdCoefficients contour_coefficients(const DiagonalOperator& L, double h,
                                     int points = 32);

// Nonlinear term evaluated spectrally; must not retain or mutate its input.
using NonlinearCallback = std::function<SpectralField(const SpectralField&, double)>;

// One Cox-Matthews ETDRK4 step. Throws DivergenceError on a non-finite result.
SpectralField etdrk4_step(const SpectralField& state, double t,
                          const EtdCoefficients& coeffs, const NonlinearCallback& N);

}  // namespace gkp
