#include "gkp/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "gkp/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

namespace gkp {

namespace {

constexpr char kMagic[4] = {'G', 'K', 'P', 'S'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::ifstream& in, const char* what) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw SnapshotError(std::string("snapshot truncated reading ") + what);
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const SnapshotHeader& h, const RealField& u) {
    const Grid2D& g = *u.grid;
    if (h.nx != g.nx || h.ny != g.ny)
        throw SnapshotError("write_snapshot: header dimensions do not match the field");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError("cannot open snapshot for writing: " + path);

    out.write(kMagic, 4);
    put<std::uint32_t>(out, kVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(h.nx));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(h.ny));
    put<double>(out, h.scale_x);
    put<double>(out, h.scale_y);
    put<double>(out, h.t);
    put<double>(out, h.L);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(h.p));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(h.q));
    put<std::int32_t>(out, h.lambda);
    out.write(reinterpret_cast<const char*>(u.values.data()),
              static_cast<std::streamsize>(u.values.size() * sizeof(double)));
    if (!out) throw SnapshotError("snapshot write failed: " + path);
}

std::pair<SnapshotHeader, RealField> read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open snapshot: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw SnapshotError("snapshot magic mismatch: " + path);
    auto version = get<std::uint32_t>(in, "version");
    if (version != kVersion)
        throw SnapshotError("unsupported snapshot version " + std::to_string(version));

    SnapshotHeader h;
    h.nx = static_cast<int>(get<std::uint32_t>(in, "nx"));
    h.ny = static_cast<int>(get<std::uint32_t>(in, "ny"));
    h.scale_x = get<double>(in, "scale_x");
    h.scale_y = get<double>(in, "scale_y");
    h.t = get<double>(in, "t");
    h.L = get<double>(in, "L");
    h.p = get<std::uint32_t>(in, "p");
    h.q = get<std::uint32_t>(in, "q");
    h.lambda = get<std::int32_t>(in, "lambda");

    RealField u(make_grid(h.nx, h.ny, h.scale_x, h.scale_y));
    in.read(reinterpret_cast<char*>(u.values.data()),
            static_cast<std::streamsize>(u.values.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(u.values.size() * sizeof(double)))
        throw SnapshotError("snapshot payload truncated: " + path);
    return {h, std::move(u)};
}

}  // namespace gkp
