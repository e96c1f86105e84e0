#pragma once

#include <complex>
#include <cstdlib>
#include <memory>
#include <new>
#include <vector>

#include "gkp/grid.hpp"

namespace gkp {

// 64-byte aligned allocator so FFTW can use SIMD paths on field data.
template <class T>
struct AlignedAllocator {
    using value_type = T;
    AlignedAllocator() = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U>&) {}

    T* allocate(std::size_t n) {
        if (n == 0) return nullptr;
        void* p = std::aligned_alloc(64, ((n * sizeof(T) + 63) / 64) * 64);
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) { std::free(p); }

    template <class U>
    bool operator==(const AlignedAllocator<U>&) const { return true; }
};

using RealVec = std::vector<double, AlignedAllocator<double>>;
using ComplexVec = std::vector<std::complex<double>, AlignedAllocator<std::complex<double>>>;
using Complex = std::complex<double>;

// Physical samples of u (or rescaled U), row-major with y outer, x inner.
struct RealField {
    std::shared_ptr<const Grid2D> grid;
    RealVec values;

    RealField() = default;
    explicit RealField(std::shared_ptr<const Grid2D> g)
        : grid(std::move(g)), values(grid->size(), 0.0) {}

    double& operator()(int ix, int iy) { return values[grid->index(ix, iy)]; }
    double operator()(int ix, int iy) const { return values[grid->index(ix, iy)]; }
    bool finite() const;
};

// Fourier coefficients in the convention F(kx,ky) = sum_j f(x_j,y_j)
// exp(-i(kx x_j + ky y_j)); the inverse carries the 1/(nx*ny) factor, so
// the (0,0) coefficient is the plain grid sum.
struct SpectralField {
    std::shared_ptr<const Grid2D> grid;
    ComplexVec coef;

    SpectralField() = default;
    explicit SpectralField(std::shared_ptr<const Grid2D> g)
        : grid(std::move(g)), coef(grid->size(), Complex{0.0, 0.0}) {}

    Complex& at(int mx, int my) { return coef[grid->index(mx, my)]; }
    Complex at(int mx, int my) const { return coef[grid->index(mx, my)]; }
    bool finite() const;

    // Max |F(k) - conj(F(-k))| over all modes.
    double hermitian_defect() const;
};

// Pointwise sign(u)^p * |u|^(p/q), the real root branch. q must be odd.
RealField real_power(const RealField& u, long p, long q);

}  // namespace gkp
