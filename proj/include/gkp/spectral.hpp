#pragma once

#include "gkp/field.hpp"

namespace gkp {

// (i*kx)^order multiplier; the kx Nyquist column is zeroed for odd orders.
SpectralField derivative_x(const SpectralField& F, int order);
SpectralField derivative_y(const SpectralField& F, int order);

// Default regularization for the -i/kx symbol: 1e-12 times the smallest
// nonzero |kx| of the grid.
double default_antiderivative_delta(const Grid2D& grid);

// Multiplier -i/(kx + i*delta). delta < 0 selects the grid default.
SpectralField antiderivative_x(const SpectralField& F, double delta = -1.0);

// Real-valued regularized reciprocal kx/(kx^2 + delta^2): the Hermitian
// part of 1/(kx + i*delta). Vanishes at kx = 0.
double regularized_recip(double kx, double delta);

// 2/3-rule dealiasing: zero the top third of modes in each direction.
void dealias_23(SpectralField& F);

// Zero the kx = 0 line (x-mean) of F.
void zero_x_mean(SpectralField& F);

}  // namespace gkp
