#pragma once

#include <string>

#include "gkp/field.hpp"
#include "gkp/rational.hpp"

namespace gkp {

// Binary state snapshot. Little-endian layout:
//   char[4] magic "GKPS"
//   u32 version (1)
//   u32 nx, u32 ny
//   f64 scale_x, scale_y, t, L
//   u32 p, u32 q, i32 lambda
//   f64[nx*ny] row-major samples of u
struct SnapshotHeader {
    int nx = 0, ny = 0;
    double scale_x = 0.0, scale_y = 0.0;
    double t = 0.0;
    double L = 1.0;  // 1.0 for direct runs
    long p = 1, q = 1;
    int lambda = -1;
};

void write_snapshot(const std::string& path, const SnapshotHeader& header,
                    const RealField& u);

std::pair<SnapshotHeader, RealField> read_snapshot(const std::string& path);

}  // namespace gkp
