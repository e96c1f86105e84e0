#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

namespace gkp {

// Periodic computational box [-pi*Lx, pi*Lx] x [-pi*Ly, pi*Ly] with
// power-of-two sampling. Wavenumbers are integer multiples of 1/Lx
// (1/Ly) in FFT ordering: 0, 1, ..., n/2-1, -n/2, ..., -1.
struct Grid2D {
    int nx;
    int ny;
    double scale_x;  // L_x
    double scale_y;  // L_y

    std::vector<double> x;   // sample points, x[j] = -pi*Lx + 2*pi*Lx*j/nx
    std::vector<double> y;
    std::vector<double> kx;  // wavenumber tables in transform ordering
    std::vector<double> ky;

    Grid2D(int nx_, int ny_, double lx, double ly);

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * nx + ix;
    }
    double dx() const { return 2.0 * M_PI * scale_x / nx; }
    double dy() const { return 2.0 * M_PI * scale_y / ny; }
    double cell_area() const { return dx() * dy(); }

    bool same_shape(const Grid2D& o) const {
        return nx == o.nx && ny == o.ny && scale_x == o.scale_x && scale_y == o.scale_y;
    }
};

std::shared_ptr<const Grid2D> make_grid(int nx, int ny, double lx, double ly);

}  // namespace gkp
