#include "gkp/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gkp/errors.hpp"

namespace gkp {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::matches_algebraic: return "matches-algebraic";
        case Verdict::matches_exponential: return "matches-exponential";
        default: return "inconclusive";
    }
}

const char* to_string(BlowupRegime r) {
    switch (r) {
        case BlowupRegime::algebraic_critical: return "algebraic-critical";
        case BlowupRegime::exponential_supercritical: return "exponential-supercritical";
        default: return "no-blowup";
    }
}

std::array<double, 3> nelder_mead(const std::function<double(const std::array<double, 3>&)>& f,
                                  std::array<double, 3> start, const SimplexConfig& cfg,
                                  bool* converged, double* fmin) {
    constexpr int dim = 3;
    using Point = std::array<double, 3>;

    std::array<Point, dim + 1> x;
    std::array<double, dim + 1> fx;
    x[0] = start;
    for (int i = 0; i < dim; ++i) {
        x[i + 1] = start;
        double& c = x[i + 1][i];
        c += (c != 0.0) ? 0.05 * c : 0.00025;  // fminsearch-style initial simplex
    }
    for (int i = 0; i <= dim; ++i) fx[i] = f(x[i]);

    bool done = false;
    for (long it = 0; it < cfg.max_iter; ++it) {
        std::array<int, dim + 1> ord;
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        {
            std::array<Point, dim + 1> xs;
            std::array<double, dim + 1> fs;
            for (int i = 0; i <= dim; ++i) { xs[i] = x[ord[i]]; fs[i] = fx[ord[i]]; }
            x = xs;
            fx = fs;
        }

        double xspread = 0.0;
        for (int i = 1; i <= dim; ++i)
            for (int j = 0; j < dim; ++j)
                xspread = std::max(xspread, std::fabs(x[i][j] - x[0][j]));
        if (xspread <= cfg.x_tol && std::fabs(fx[dim] - fx[0]) <= cfg.f_tol) {
            done = true;
            break;
        }

        Point centroid{0, 0, 0};
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) centroid[j] += x[i][j] / dim;

        auto along = [&](double coeff) {
            Point p;
            for (int j = 0; j < dim; ++j)
                p[j] = centroid[j] + coeff * (x[dim][j] - centroid[j]);
            return p;
        };

        Point xr = along(-cfg.reflection);
        double fr = f(xr);
        if (fr < fx[0]) {
            Point xe = along(-cfg.reflection * cfg.expansion);
            double fe = f(xe);
            if (fe < fr) { x[dim] = xe; fx[dim] = fe; }
            else { x[dim] = xr; fx[dim] = fr; }
        } else if (fr < fx[dim - 1]) {
            x[dim] = xr;
            fx[dim] = fr;
        } else {
            bool outside = fr < fx[dim];
            Point xc = along(outside ? -cfg.reflection * cfg.contraction : cfg.contraction);
            double fc = f(xc);
            if (fc < std::min(fr, fx[dim])) {
                x[dim] = xc;
                fx[dim] = fc;
            } else {
                for (int i = 1; i <= dim; ++i) {
                    for (int j = 0; j < dim; ++j)
                        x[i][j] = x[0][j] + cfg.shrink * (x[i][j] - x[0][j]);
                    fx[i] = f(x[i]);
                }
            }
        }
    }

    int best = static_cast<int>(std::min_element(fx.begin(), fx.end()) - fx.begin());
    if (converged) *converged = done;
    if (fmin) *fmin = fx[best];
    return x[best];
}

FitResult fit_log_power(const NormTrace& trace, int k_last,
                        std::array<double, 3> guess, const SimplexConfig& cfg) {
    if (k_last < 10) throw FitDomainError("fit_log_power: need at least 10 points");
    const int total = static_cast<int>(trace.t.size());
    if (total < k_last) throw FitDomainError("fit_log_power: trace shorter than the window");
    const int first = total - k_last;

    std::vector<double> t(trace.t.begin() + first, trace.t.end());
    std::vector<double> lv(k_last);
    for (int i = 0; i < k_last; ++i) {
        double v = trace.v[first + i];
        if (!(v > 0.0)) throw FitDomainError("fit_log_power: trace values must be positive");
        lv[i] = std::log(v);
    }
    const double t_last = t.back();
    if (!(guess[2] > t_last))
        throw FitDomainError("fit_log_power: t_star guess must exceed the last time");
    const double eps = 1e-12 * std::max(1.0, std::fabs(t_last));

    auto objective = [&](const std::array<double, 3>& p) {
        double C = p[0], c = p[1], ts = p[2];
        if (ts <= t_last + eps) {
            // smooth penalty keeps the logs defined while staying unconstrained
            double d = (t_last + eps) - ts;
            return 1e12 * (1.0 + d * d);
        }
        double s = 0.0;
        for (int i = 0; i < k_last; ++i) {
            double r = lv[i] - C - c * std::log(ts - t[i]);
            s += r * r;
        }
        return s;
    };

    // With t_star held fixed the model is linear in (C, c), so profile the
    // pair out in closed form. A one-dimensional scan over t_star then gives
    // a reliable start; the raw three-parameter simplex tends to drift along
    // the flat ridge C ~ -c log(t_star) as t_star grows.
    auto profiled = [&](double ts) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
        for (int i = 0; i < k_last; ++i) {
            double X = std::log(ts - t[i]), Y = lv[i];
            sx += X; sy += Y; sxx += X * X; sxy += X * Y; syy += Y * Y;
        }
        double m = k_last;
        double denom = m * sxx - sx * sx;
        double c = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
        double C = (sy - c * sx) / m;
        double r = syy - 2.0 * C * sy - 2.0 * c * sxy + m * C * C +
                   2.0 * C * c * sx + c * c * sxx;
        return std::array<double, 3>{C, c, std::max(r, 0.0)};
    };
    const double span = std::max(t_last - t.front(), eps);
    std::array<double, 3> scan_best{guess[0], guess[1], guess[2]};
    double scan_res = objective(scan_best);
    auto consider = [&](double ts) {
        if (!(ts > t_last + eps)) return;
        auto [C, c, r] = profiled(ts);
        if (r < scan_res) { scan_best = {C, c, ts}; scan_res = r; }
    };
    consider(guess[2]);
    // the scan stays at least two sample spacings past the data: closer
    // candidates let the last point's leverage produce absurd exponents
    const double dt_last = k_last >= 2 ? t[k_last - 1] - t[k_last - 2] : span;
    const double off_min = std::max(span * 1e-2, 2.0 * dt_last);
    for (int k = 0; k <= 240; ++k)
        consider(t_last + off_min * std::pow(10.0, 5.0 * k / 240.0));
    // local refinement of the scan winner by interval thirds
    {
        double lo = std::max(t_last + eps, scan_best[2] / 1.2);
        double hi = scan_best[2] * 1.2;
        for (int pass = 0; pass < 60; ++pass) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (profiled(m1)[2] < profiled(m2)[2]) hi = m2; else lo = m1;
        }
        consider(0.5 * (lo + hi));
    }

    FitResult res;
    bool ok = false;
    auto best = nelder_mead(objective, scan_best, cfg, &ok, &res.residual);
    // Restart the simplex from the incumbent: a fresh simplex escapes the
    // degenerate (collapsed) configurations the method can stall in.
    for (int restart = 0; restart < 4; ++restart) {
        bool ok2 = false;
        double f2 = res.residual;
        auto cand = nelder_mead(objective, best, cfg, &ok2, &f2);
        if (!(f2 < res.residual * (1.0 - 1e-9))) break;
        best = cand;
        res.residual = f2;
        ok = ok2;
    }
    if (scan_res < res.residual) {
        best = scan_best;
        res.residual = scan_res;
        ok = true;
    }
    res.C = best[0];
    res.c = best[1];
    res.t_star = best[2];
    res.k_last = k_last;
    res.converged = ok;
    return res;
}

std::pair<double, double> fit_xmin(const NormTrace& trace, double t_star, int k_last) {
    const int total = static_cast<int>(trace.t.size());
    if (k_last < 2 || total < k_last)
        throw FitDomainError("fit_xmin: window must hold at least 2 trace points");
    const int first = total - k_last;
    if (!(t_star > trace.t.back()))
        throw FitDomainError("fit_xmin: t_star must exceed the last time");

    // ln x = alpha1 ln(t*-t) + alpha2, closed-form linear least squares
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = first; i < total; ++i) {
        if (!(trace.v[i] > 0.0))
            throw FitDomainError("fit_xmin: x_min must stay positive on the window");
        double X = std::log(t_star - trace.t[i]);
        double Y = std::log(trace.v[i]);
        sx += X; sy += Y; sxx += X * X; sxy += X * Y;
    }
    double m = k_last;
    double denom = m * sxx - sx * sx;
    double alpha1 = (m * sxy - sx * sy) / denom;
    double alpha2 = (sy - alpha1 * sx) / m;
    return {alpha1, alpha2};
}

RatePrediction predict_rates(Rational n, std::optional<double> gamma1) {
    RatePrediction p;
    p.n = n;
    const double nv = n.value();
    const double critical = 4.0 / 3.0;
    if (nv < critical - 1e-12) {
        p.regime = BlowupRegime::no_blowup;
        return p;
    }
    if (std::fabs(nv - critical) < 1e-12) {
        p.regime = BlowupRegime::algebraic_critical;
        p.gamma1 = gamma1.value_or(-1.0);
        // L ~ tau^{gamma1} gives L ~ (t*-t)^{gamma1/(3 gamma1+1)}
        double e = p.gamma1 / (3.0 * p.gamma1 + 1.0);
        p.linf_exp = -(2.0 / nv) * e;
        p.l2uy_exp = -0.5 * (1.0 + 4.0 / nv) * e;
        p.l2uy_sq_exp = 2.0 * p.l2uy_exp;
        return p;
    }
    p.regime = BlowupRegime::exponential_supercritical;
    p.kappa_sign = -1;
    p.linf_exp = -2.0 / (3.0 * nv);
    p.l2uy_exp = -(1.0 + 4.0 / nv) / 6.0;
    p.l2uy_sq_exp = 2.0 * p.l2uy_exp;
    return p;
}

Verdict classify(const FitResult& fit, const RatePrediction& pred, double tol) {
    if (pred.regime == BlowupRegime::no_blowup) return Verdict::inconclusive;
    double expected;
    if (fit.norm_id == "linf_u") expected = pred.linf_exp;
    else if (fit.norm_id == "l2_uy") expected = pred.l2uy_exp;
    else if (fit.norm_id == "l2_uy_squared") expected = pred.l2uy_sq_exp;
    else return Verdict::inconclusive;
    if (std::fabs(fit.c - expected) > tol) return Verdict::inconclusive;
    return pred.regime == BlowupRegime::algebraic_critical
               ? Verdict::matches_algebraic
               : Verdict::matches_exponential;
}

}  // namespace gkp
