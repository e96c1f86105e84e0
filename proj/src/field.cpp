#include "gkp/field.hpp"

#include <cmath>

#include "gkp/errors.hpp"

namespace gkp {

bool RealField::finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

bool SpectralField::finite() const {
    for (const auto& c : coef)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

double SpectralField::hermitian_defect() const {
    const Grid2D& g = *grid;
    double worst = 0.0;
    for (int my = 0; my < g.ny; ++my) {
        int py = (g.ny - my) % g.ny;
        for (int mx = 0; mx < g.nx; ++mx) {
            int px = (g.nx - mx) % g.nx;
            Complex d = coef[g.index(mx, my)] - std::conj(coef[g.index(px, py)]);
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

RealField real_power(const RealField& u, long p, long q) {
    if (q <= 0 || q % 2 == 0)
        throw UnsupportedExponentError("real_power: denominator must be odd and positive");
    if (p < 0)
        throw UnsupportedExponentError("real_power: negative exponents unsupported");

    RealField out(u.grid);
    const std::size_t n = u.values.size();
    const double r = static_cast<double>(p) / static_cast<double>(q);

    if (q == 1) {
        for (std::size_t j = 0; j < n; ++j) {
            double v = u.values[j], acc = 1.0;
            for (long k = 0; k < p; ++k) acc *= v;
            out.values[j] = acc;
        }
    } else if (q == 3) {
        // cbrt keeps the real branch for negative arguments
        for (std::size_t j = 0; j < n; ++j) {
            double c = std::cbrt(u.values[j]), acc = 1.0;
            for (long k = 0; k < p; ++k) acc *= c;
            out.values[j] = acc;
        }
    } else {
        const double sign_flip = (p % 2 != 0) ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            double v = u.values[j];
            double m = std::pow(std::fabs(v), r);
            out.values[j] = (v < 0.0) ? sign_flip * m : m;
        }
    }
    return out;
}

}  // namespace gkp
