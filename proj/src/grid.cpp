#include "gkp/grid.hpp"

namespace gkp {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid2D::Grid2D(int nx_, int ny_, double lx, double ly)
    : nx(nx_), ny(ny_), scale_x(lx), scale_y(ly) {
    if (nx < 8 || !power_of_two(nx) || ny < 8 || !power_of_two(ny))
        throw std::invalid_argument("Grid2D: nx, ny must be powers of two >= 8");
    if (!(scale_x > 0.0) || !(scale_y > 0.0))
        throw std::invalid_argument("Grid2D: scales must be positive");

    x.resize(nx);
    kx.resize(nx);
    for (int j = 0; j < nx; ++j) {
        x[j] = -M_PI * scale_x + 2.0 * M_PI * scale_x * j / nx;
        kx[j] = (j < nx / 2 ? j : j - nx) / scale_x;
    }
    y.resize(ny);
    ky.resize(ny);
    for (int j = 0; j < ny; ++j) {
        y[j] = -M_PI * scale_y + 2.0 * M_PI * scale_y * j / ny;
        ky[j] = (j < ny / 2 ? j : j - ny) / scale_y;
    }
}

std::shared_ptr<const Grid2D> make_grid(int nx, int ny, double lx, double ly) {
    return std::make_shared<const Grid2D>(nx, ny, lx, ly);
}

}  // namespace gkp
