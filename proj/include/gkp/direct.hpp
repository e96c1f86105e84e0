#pragma once

#include <functional>
#include <optional>

#include "gkp/diagnostics.hpp"
#include "gkp/etd.hpp"
#include "gkp/rational.hpp"

namespace gkp {

enum class StopReason { completed, delta_exceeded, diverged };

const char* to_string(StopReason r);

// Which conserved quantity gates the stop decision.
enum class StopQuantity { energy, mass };

struct GkpParams {
    Rational n{1, 1};     // nonlinearity exponent p/q, q odd
    int lambda = -1;      // -1: gKP I (focusing), +1: gKP II (defocusing)
    std::shared_ptr<const Grid2D> grid;
    double h = 0.0;       // constant time step
    double t_end = 0.0;
    double delta_stop = 1e-3;
    StopQuantity stop_on = StopQuantity::energy;
    double delta_scale = 1e-12;  // antiderivative regularization, delta = scale * min|kx|
    int contour_points = 32;
    bool dealias = false;
    bool refine_minimum = false;

    double antiderivative_delta() const;
    void validate() const;
};

// Initial data as the x-antiderivative w0 (zero x-mean by construction).
struct InitialData {
    double beta = 1.0;
    std::function<RealField(std::shared_ptr<const Grid2D>)> w0;

    // u0 = beta * d_xx exp(-(x^2+y^2)), i.e. w0 = -2 beta x exp(-(x^2+y^2)).
    static InitialData gaussian_dxx(double beta);
    // Arbitrary x-derivative data via its antiderivative.
    static InitialData from_w(std::function<RealField(std::shared_ptr<const Grid2D>)> fn);
};

struct SolverState {
    SpectralField w_hat;  // integral of u in x; u_hat = i kx w_hat
    double t = 0.0;
    long step_index = 0;
};

SpectralField u_hat_of(const SolverState& s);

struct RunResult {
    SolverState state;
    StopReason reason;
};

struct Observers {
    std::function<void(const DiagnosticsRecord&)> on_record;
    int diag_stride = 1;
    int snapshot_stride = 0;  // 0: no snapshots
    // Called at the snapshot cadence; may replace the state in place
    // (checkpoint canonicalization).
    std::function<void(SolverState&)> on_snapshot;
};

// The w-equation nonlinearity: -(u^{n+1})^ / (n+1) with u = F^{-1}(i kx w_hat),
// kx = 0 line zeroed. Its x-derivative is the gKP nonlinear term.
SpectralField nonlinear_w(const SpectralField& w_hat, const GkpParams& params);

// L = i(kx^3 - lambda ky^2 kx/(kx^2+delta^2)): purely imaginary by
// construction, zero on the kx = 0 line and the kx Nyquist column.
DiagonalOperator linear_symbol(const Grid2D& grid, int lambda, double delta);

RunResult run_direct(const GkpParams& params, const InitialData& u0,
                     const Observers& obs = {});

// Continue from an existing state (snapshot resume). Drift indicators are
// referenced to the resume point.
RunResult run_direct_from(const GkpParams& params, SolverState state,
                          const Observers& obs = {});

}  // namespace gkp
