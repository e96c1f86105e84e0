#pragma once

#include "gkp/direct.hpp"

namespace gkp {

// Closure for the rescaled equation. a-only keeps the blow-up point
// unpinned (v = 0) and requires y-symmetric data; full solves the 2x2
// minimum-pinning system each stage.
struct RescaleClosure {
    enum class Mode { a_only, full };
    Mode mode = Mode::a_only;
};

struct RescaledState {
    SpectralField W_hat;  // xi-integral of U
    double tau = 0.0;
    long step_index = 0;
    double L = 1.0;       // scale factor, L(0) = 1
    double t_phys = 0.0;  // reconstructed physical time
    double x_m = 0.0;     // blow-up point offset (0 in a-only mode)
    double y_m = 0.0;
};

struct RescaledResult {
    RescaledState state;
    StopReason reason;
    std::vector<double> tau_trace, a_trace, L_trace, t_trace;
};

struct RescaledParams {
    Rational n{2, 1};
    int lambda = -1;
    std::shared_ptr<const Grid2D> grid;
    double h = 0.0;  // tau step
    double tau_end = 0.0;
    double mass_stop = 0.1;  // stop when physical mass drifts past this
    double delta_scale = 1e-12;
    int contour_points = 32;
    bool dealias = false;
    RescaleClosure closure;

    double antiderivative_delta() const;
    void validate() const;
};

// a = 2n / ((4+n)(n+1) ||U_eta||^2) * int U^{n+1} U_{eta eta xi}, with
// ref_norm the (unsquared) ||U_eta||_2 frozen at tau = 0.
double compute_a(const SpectralField& U_hat, Rational n, double ref_norm);

// Speeds (v_xi, v_eta) from the minimum-pinning 2x2 system, derivatives
// evaluated spectrally at the pinned point xi = eta = 0.
std::pair<double, double> compute_v(const SpectralField& U_hat, Rational n, int lambda);

// Non-exponentiated part of the W-equation right-hand side: the gKP
// nonlinearity plus the scaling terms a(2/n U + xi U_xi + 2 eta U_eta)
// and the transport v.grad U, each pulled back by one xi-antiderivative.
SpectralField rescaled_rhs(const SpectralField& W_hat, double a,
                           std::pair<double, double> v, const RescaledParams& params);

RescaledResult run_rescaled(const RescaledParams& params, const InitialData& U0,
                            const Observers& obs = {});

struct CoordinateMap {
    double x_m, y_m, L;  // x = x_m + L xi, y = y_m + L^2 eta
};

// u = L^{-2/n} U((x-x_m)/L, (y-y_m)/L^2) on the grid with scales
// (L * scale_xi, L^2 * scale_eta).
std::pair<RealField, CoordinateMap> rescale_back(const RescaledState& state, Rational n);

// Trigonometric evaluation of the rescaled-back u along y = y_m at the
// given physical x locations (periodic in xi).
std::vector<double> sample_slice_y0(const RescaledState& state, Rational n,
                                    const std::vector<double>& xs);

}  // namespace gkp
