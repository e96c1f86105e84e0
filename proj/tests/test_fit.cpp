#include <doctest.h>

#include <cmath>
#include <random>

#include "gkp/errors.hpp"
#include "gkp/fit.hpp"

using namespace gkp;

namespace {

NormTrace power_trace(double C, double c, double t_star, int count, double t_max,
                      double noise = 0.0, unsigned seed = 0) {
    NormTrace tr;
    std::mt19937 rng(seed);
    std::normal_distribution<double> eps(0.0, noise);
    for (int i = 0; i < count; ++i) {
        double t = t_max * i / (count - 1);
        double v = std::exp(C) * std::pow(t_star - t, c);
        if (noise > 0.0) v *= 1.0 + eps(rng);
        tr.push(t, v);
    }
    return tr;
}

}  // namespace

TEST_CASE("exact model data is recovered") {
    NormTrace tr = power_trace(std::log(2.0), -1.0 / 3.0, 0.5, 200, 0.4);
    FitResult fit = fit_log_power(tr, 100, {0.0, -0.5, 0.45});
    CHECK(fit.converged);
    CHECK(fit.C == doctest::Approx(std::log(2.0)).epsilon(1e-6));
    CHECK(fit.c == doctest::Approx(-1.0 / 3.0).epsilon(1e-6));
    CHECK(fit.t_star == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(fit.residual < 1e-12);
}

TEST_CASE("random triples are recovered to 1e-5") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> Cd(-2.0, 2.0), cd(-2.0, -0.1), td(0.3, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        double C = Cd(rng), c = cd(rng), ts = td(rng);
        NormTrace tr = power_trace(C, c, ts, 150, 0.8 * ts);
        FitResult fit = fit_log_power(tr, 120, {C + 0.3, c + 0.2, ts + 0.1 * ts});
        CHECK(std::fabs(fit.C - C) < 1e-5);
        CHECK(std::fabs(fit.c - c) < 1e-5);
        CHECK(std::fabs(fit.t_star - ts) < 1e-5);
    }
}

TEST_CASE("one percent multiplicative noise keeps the exponent honest") {
    for (unsigned seed = 1; seed <= 5; ++seed) {
        NormTrace tr = power_trace(0.5, -0.75, 1.0, 400, 0.9, 0.01, seed);
        FitResult fit = fit_log_power(tr, 300, {0.4, -0.6, 1.05});
        CHECK(std::fabs(fit.c + 0.75) < 0.05);
    }
}

TEST_CASE("scaling the trace only shifts the offset") {
    NormTrace tr = power_trace(0.2, -0.6, 0.7, 150, 0.6);
    NormTrace scaled = tr;
    for (auto& v : scaled.v) v *= 13.0;
    FitResult f1 = fit_log_power(tr, 100, {0.0, -0.5, 0.65});
    FitResult f2 = fit_log_power(scaled, 100, {0.0, -0.5, 0.65});
    CHECK(std::fabs(f2.C - f1.C - std::log(13.0)) < 1e-8);
    CHECK(std::fabs(f2.c - f1.c) < 1e-8);
    CHECK(std::fabs(f2.t_star - f1.t_star) < 1e-8);
}

TEST_CASE("domain guards") {
    NormTrace tr = power_trace(0.0, -0.5, 1.0, 50, 0.5);
    CHECK_THROWS_AS((void)fit_log_power(tr, 5, {0.0, -0.5, 1.0}), FitDomainError);
    CHECK_THROWS_AS((void)fit_log_power(tr, 20, {0.0, -0.5, 0.4}), FitDomainError);
    NormTrace bad;
    for (int i = 0; i < 20; ++i) bad.push(0.01 * i, i == 7 ? -1.0 : 1.0);
    CHECK_THROWS_AS((void)fit_log_power(bad, 20, {0.0, -0.5, 1.0}), FitDomainError);
}

TEST_CASE("closed-form location fit recovers the exact model") {
    NormTrace tr;
    double ts = 0.31;
    for (int i = 0; i < 60; ++i) {
        double t = 0.3 * i / 59.0;
        tr.push(t, std::exp(0.2) * std::pow(ts - t, -0.1));
    }
    auto [a1, a2] = fit_xmin(tr, ts, 50);
    CHECK(a1 == doctest::Approx(-0.1).epsilon(1e-8));
    CHECK(a2 == doctest::Approx(0.2).epsilon(1e-8));
}

TEST_CASE("closed-form fit equals the simplex on the same two-parameter problem") {
    NormTrace tr = power_trace(0.3, -0.25, 0.8, 120, 0.7, 0.02, 3);
    const double ts = 0.8;
    auto [a1, a2] = fit_xmin(tr, ts, 100);
    auto objective = [&](const std::array<double, 3>& p) {
        double s = 0.0;
        int first = static_cast<int>(tr.size()) - 100;
        for (int i = first; i < static_cast<int>(tr.size()); ++i) {
            double r = std::log(tr.v[i]) - p[0] * std::log(ts - tr.t[i]) - p[1];
            s += r * r;
        }
        return s;
    };
    SimplexConfig cfg;
    cfg.x_tol = cfg.f_tol = 1e-13;
    auto best = nelder_mead(objective, {a1 + 0.05, a2 - 0.05, 0.0}, cfg);
    CHECK(std::fabs(best[0] - a1) < 1e-6);
    CHECK(std::fabs(best[1] - a2) < 1e-6);
}

TEST_CASE("predicted exponents") {
    RatePrediction crit = predict_rates(Rational{4, 3});
    CHECK(crit.regime == BlowupRegime::algebraic_critical);
    CHECK(crit.gamma1 == doctest::Approx(-1.0));
    CHECK(crit.linf_exp == doctest::Approx(-0.75));
    CHECK(crit.l2uy_exp == doctest::Approx(-1.0));
    CHECK(crit.l2uy_sq_exp == doctest::Approx(-2.0));

    RatePrediction n2 = predict_rates(Rational{2, 1});
    CHECK(n2.regime == BlowupRegime::exponential_supercritical);
    CHECK(n2.kappa_sign == -1);
    CHECK(n2.linf_exp == doctest::Approx(-1.0 / 3.0));
    CHECK(n2.l2uy_exp == doctest::Approx(-0.5));
    CHECK(n2.l2uy_sq_exp == doctest::Approx(-1.0));

    RatePrediction n3 = predict_rates(Rational{3, 1});
    CHECK(n3.linf_exp == doctest::Approx(-2.0 / 9.0));

    RatePrediction n4 = predict_rates(Rational{4, 1});
    CHECK(n4.linf_exp == doctest::Approx(-1.0 / 6.0));
    CHECK(n4.l2uy_sq_exp == doctest::Approx(-2.0 / 3.0));

    CHECK(predict_rates(Rational{1, 1}).regime == BlowupRegime::no_blowup);
}

TEST_CASE("classification against the predictions") {
    FitResult fit;
    fit.norm_id = "linf_u";
    fit.c = -0.33;
    CHECK(classify(fit, predict_rates(Rational{2, 1}), 0.05) ==
          Verdict::matches_exponential);
    fit.c = -0.75;
    CHECK(classify(fit, predict_rates(Rational{4, 3}), 0.05) ==
          Verdict::matches_algebraic);
    fit.c = -0.5;
    CHECK(classify(fit, predict_rates(Rational{2, 1}), 0.05) == Verdict::inconclusive);
    CHECK(classify(fit, predict_rates(Rational{4, 3}), 0.05) == Verdict::inconclusive);
}
