#include "gkp/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>

#include "gkp/errors.hpp"

namespace gkp {

// Transforms run through c2c FFTW plans cached per grid shape. The sample
// offset (-pi L) is absorbed by rotating the arrays by half the grid in
// each direction during the copy passes, so coefficients come out in the
// continuous convention F(k) = sum f(x_j) e^{-i k x_j}.

struct FftEngine::Impl {
    struct Plans {
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
        ComplexVec scratch_in, scratch_out;
    };
    std::map<std::pair<int, int>, Plans> cache;

    ~Impl() { clear(); }
    void clear() {
        for (auto& [shape, p] : cache) {
            if (p.fwd) fftw_destroy_plan(p.fwd);
            if (p.bwd) fftw_destroy_plan(p.bwd);
        }
        cache.clear();
    }

    Plans& get(int nx, int ny, int threads, bool deterministic) {
        auto it = cache.find({nx, ny});
        if (it != cache.end()) return it->second;

        Plans& p = cache[{nx, ny}];
        std::size_t n = static_cast<std::size_t>(nx) * ny;
        p.scratch_in.resize(n);
        p.scratch_out.resize(n);
        fftw_plan_with_nthreads(threads);
        unsigned flags = deterministic ? FFTW_ESTIMATE : FFTW_MEASURE;
        auto* in = reinterpret_cast<fftw_complex*>(p.scratch_in.data());
        auto* out = reinterpret_cast<fftw_complex*>(p.scratch_out.data());
        p.fwd = fftw_plan_dft_2d(ny, nx, in, out, FFTW_FORWARD, flags);
        p.bwd = fftw_plan_dft_2d(ny, nx, in, out, FFTW_BACKWARD, flags);
        if (!p.fwd || !p.bwd) throw Error("FFTW planning failed");
        return p;
    }
};

FftEngine& FftEngine::instance() {
    static FftEngine engine;
    return engine;
}

FftEngine::FftEngine() : impl_(new Impl) { fftw_init_threads(); }

FftEngine::~FftEngine() { delete impl_; }

void FftEngine::configure(int threads, bool deterministic) {
    if (threads < 1) threads = 1;
    if (threads == threads_ && deterministic == deterministic_) return;
    threads_ = threads;
    deterministic_ = deterministic;
    impl_->clear();
}

SpectralField FftEngine::forward(const RealField& f) {
    const Grid2D& g = *f.grid;
    auto& p = impl_->get(g.nx, g.ny, threads_, deterministic_);
    const int nx = g.nx, ny = g.ny;

    bool ok = true;
    for (int iy = 0; iy < ny; ++iy) {
        const double* src = f.values.data() + static_cast<std::size_t>((iy + ny / 2) % ny) * nx;
        Complex* dst = p.scratch_in.data() + static_cast<std::size_t>(iy) * nx;
        for (int ix = 0; ix < nx; ++ix) {
            double v = src[(ix + nx / 2) % nx];
            ok &= std::isfinite(v);
            dst[ix] = Complex{v, 0.0};
        }
    }
    if (!ok) throw InvalidFieldError("forward: non-finite input field");

    SpectralField F(f.grid);
    fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(p.scratch_in.data()),
                     reinterpret_cast<fftw_complex*>(F.coef.data()));
    return F;
}

RealField FftEngine::inverse(const SpectralField& F, double sym_tol) {
    const Grid2D& g = *F.grid;
    auto& p = impl_->get(g.nx, g.ny, threads_, deterministic_);
    const int nx = g.nx, ny = g.ny;
    const double inv_n = 1.0 / static_cast<double>(g.size());

    fftw_execute_dft(p.bwd,
                     reinterpret_cast<fftw_complex*>(const_cast<Complex*>(F.coef.data())),
                     reinterpret_cast<fftw_complex*>(p.scratch_out.data()));

    RealField f(F.grid);
    double max_imag = 0.0, max_abs = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
        const Complex* src = p.scratch_out.data() + static_cast<std::size_t>((iy + ny / 2) % ny) * nx;
        double* dst = f.values.data() + static_cast<std::size_t>(iy) * nx;
        for (int ix = 0; ix < nx; ++ix) {
            Complex v = src[(ix + nx / 2) % nx];
            double re = v.real() * inv_n;
            double im = std::fabs(v.imag()) * inv_n;
            dst[ix] = re;
            if (im > max_imag) max_imag = im;
            double a = std::fabs(re);
            if (a > max_abs) max_abs = a;
        }
    }
    if (max_imag > sym_tol * max_abs && max_imag > 1e-14)
        throw AsymmetryError("inverse: coefficients are not Hermitian-symmetric");
    return f;
}

SpectralField forward(const RealField& f) { return FftEngine::instance().forward(f); }
RealField inverse(const SpectralField& F) { return FftEngine::instance().inverse(F); }

}  // namespace gkp
