#pragma once

#include <numeric>
#include <stdexcept>

namespace gkp {

// Exact rational exponent p/q. q must be odd wherever a real root
// branch is taken; that is checked at the point of use, not here.
struct Rational {
    long p = 1;
    long q = 1;

    constexpr Rational() = default;
    Rational(long p_, long q_) : p(p_), q(q_) {
        if (q == 0) throw std::invalid_argument("Rational: zero denominator");
        if (q < 0) { p = -p; q = -q; }
        long g = std::gcd(p < 0 ? -p : p, q);
        if (g > 1) { p /= g; q /= g; }
    }

    double value() const { return static_cast<double>(p) / static_cast<double>(q); }
    Rational plus(long k) const { return Rational(p + k * q, q); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.p == b.p && a.q == b.q;
    }
};

}  // namespace gkp
