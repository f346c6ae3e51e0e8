#include "sqfn/field_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sqfn {

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
           std::uint32_t(b[3]) << 24;
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

}  // namespace

void write_field_binary(const ScalarField& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.write("SQFN", 4);
    put_u32(os, 1);
    put_u32(os, static_cast<std::uint32_t>(f.grid.n));
    put_u32(os, static_cast<std::uint32_t>(f.grid.N));
    put_f64(os, f.grid.L);
    for (double v : f.values) put_f64(os, v);
    if (!os) throw std::runtime_error("write failed: " + path);
}

ScalarField read_field_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "SQFN", 4) != 0)
        throw std::runtime_error("bad magic in field file: " + path);
    std::uint32_t version = get_u32(is);
    if (version != 1) throw std::runtime_error("unsupported field file version");
    int n = static_cast<int>(get_u32(is));
    int N = static_cast<int>(get_u32(is));
    double L = get_f64(is);
    ScalarField f(make_grid(n, N, L));
    for (auto& v : f.values) v = get_f64(is);
    if (!is) throw std::runtime_error("truncated field file: " + path);
    return f;
}

void write_field_csv(const ScalarField& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.precision(17);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto k = f.grid.unravel(i);
        for (int d = 0; d < f.grid.n; ++d) os << k[d] << ',';
        os << f[i] << '\n';
    }
}

}  // namespace sqfn
