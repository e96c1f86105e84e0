#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "gkp/diagnostics.hpp"
#include "gkp/rational.hpp"

namespace gkp {

// Nelder-Mead coefficients and termination tolerances (fminsearch-style).
struct SimplexConfig {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    long max_iter = 100000;
    double x_tol = 1e-9;
    double f_tol = 1e-9;
};

struct FitResult {
    double C = 0.0;
    double c = 0.0;
    double t_star = 0.0;
    double residual = 0.0;  // sum of squared log-residuals
    int k_last = 0;
    std::string norm_id;
    bool converged = false;
};

enum class BlowupRegime { no_blowup, algebraic_critical, exponential_supercritical };

struct RatePrediction {
    Rational n{2, 1};
    BlowupRegime regime = BlowupRegime::no_blowup;
    double linf_exp = 0.0;
    double l2uy_exp = 0.0;     // on the unsquared norm
    double l2uy_sq_exp = 0.0;  // on the squared norm
    double gamma1 = 0.0;       // algebraic regime only
    int kappa_sign = 0;        // -1 in the supercritical regime
};

enum class Verdict { matches_algebraic, matches_exponential, inconclusive };

const char* to_string(Verdict v);
const char* to_string(BlowupRegime r);

// Minimize the general objective with Nelder-Mead; used by fit_log_power
// and exposed for the two-route fit checks.
std::array<double, 3> nelder_mead(const std::function<double(const std::array<double, 3>&)>& f,
                                  std::array<double, 3> start, const SimplexConfig& cfg,
                                  bool* converged = nullptr, double* fmin = nullptr);

// Least-squares fit of ln v ~ C + c ln(t* - t) over the trailing k_last
// points; t* is kept above the last time by a penalty.
FitResult fit_log_power(const NormTrace& trace, int k_last,
                        std::array<double, 3> guess, const SimplexConfig& cfg = {});

// ln x_m ~ alpha1 ln(t* - t) + alpha2 with t* fixed: closed-form linear
// least squares. Returns (alpha1, alpha2).
std::pair<double, double> fit_xmin(const NormTrace& trace, double t_star, int k_last);

// Predicted divergence exponents. n = 4/3: algebraic regime with the given
// gamma1 (default -1). n > 4/3: exponential/supercritical regime.
// n < 4/3: no blow-up predicted.
RatePrediction predict_rates(Rational n, std::optional<double> gamma1 = std::nullopt);

// Compare a fitted exponent against the prediction for its norm at the
// given tolerance.
Verdict classify(const FitResult& fit, const RatePrediction& pred, double tol);

}  // namespace gkp
