#pragma once

#include <string>
#include <vector>

#include "gkp/field.hpp"
#include "gkp/rational.hpp"

namespace gkp {

// Per-sample-time bundle of conserved quantities, norms, minimum location
// and spectral-resolution indicators.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double delta_mass = 0.0;    // |M(t)/M(0) - 1|
    double delta_energy = 0.0;  // |E(t)/E(0) - 1|
    double linf_u = 0.0;
    double l2_uy = 0.0;
    double l2_ux = 0.0;
    double u_min = 0.0;
    double x_min = 0.0;
    double y_min = 0.0;
    double tail_x = 0.0;
    double tail_y = 0.0;
};

// Ordered (time, value) samples of a named norm.
struct NormTrace {
    std::string name;
    std::vector<double> t;
    std::vector<double> v;

    void push(double time, double value);
    std::size_t size() const { return t.size(); }
};

// L2 norm of u via Parseval.
double mass(const SpectralField& u_hat);
// Independent route: grid quadrature of u^2 in physical space.
double mass_quadrature(const RealField& u);

// E[u] = int ( u_x^2/2 - u^{n+2}/((n+1)(n+2)) - (lambda/2)(dx^{-1} u_y)^2 ).
// n = p/q with q odd; delta < 0 selects the grid default regularization.
double energy(const SpectralField& u_hat, Rational n, int lambda, double delta = -1.0);
// Same, with the integrals taken as real-space quadratures.
double energy_quadrature(const SpectralField& u_hat, Rational n, int lambda,
                         double delta = -1.0);

struct NormSet {
    double linf_u, l2_uy, l2_ux, u_min, x_min, y_min;
};

// Grid extrema plus spectral L2 norms of the first derivatives. With
// refine_minimum, the minimum location gets a 3-point quadratic correction
// per direction; off by default so x_min shows the grid-quantized plateaus.
NormSet norms(const SpectralField& u_hat, bool refine_minimum = false);

// Max coefficient modulus over the top third of wavenumbers per direction,
// normalized by the global max modulus.
std::pair<double, double> resolution_indicator(const SpectralField& u_hat);

// One inverse transform serving all record fields. reference_mass/energy
// are the t=0 values for the drift indicators (pass the current values at
// t=0).
DiagnosticsRecord compute_record(const SpectralField& u_hat, double t, Rational n,
                                 int lambda, double reference_mass,
                                 double reference_energy,
                                 bool refine_minimum = false);

}  // namespace gkp
