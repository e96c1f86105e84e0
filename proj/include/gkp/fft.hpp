#pragma once

#include "gkp/field.hpp"

namespace gkp {

// Process-wide FFT backend (FFTW). Plans are cached per grid shape.
// configure() must be called before the first transform on a grid shape
// if non-default planning is wanted; it drops all cached plans.
class FftEngine {
  public:
    static FftEngine& instance();

    // deterministic: FFTW_ESTIMATE plans (bitwise reproducible run to run);
    // otherwise FFTW_MEASURE. threads: FFTW thread count (>=1).
    void configure(int threads, bool deterministic);

    int threads() const { return threads_; }
    bool deterministic() const { return deterministic_; }

    SpectralField forward(const RealField& f);
    RealField inverse(const SpectralField& F, double sym_tol = 1e-8);

    ~FftEngine();

  private:
    FftEngine();
    struct Impl;
    Impl* impl_;
    int threads_ = 1;
    bool deterministic_ = false;
};

SpectralField forward(const RealField& f);
RealField inverse(const SpectralField& F);

}  // namespace gkp
