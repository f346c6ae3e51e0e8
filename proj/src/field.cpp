#include "sqfn/field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "sqfn/spectral.hpp"

namespace sqfn {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int d = 0; d < n; ++d) s *= static_cast<std::size_t>(N);
    return s;
}

std::array<int, 3> GridSpec::unravel(std::size_t idx) const {
    std::array<int, 3> k{0, 0, 0};
    for (int d = 0; d < n; ++d) {
        k[d] = static_cast<int>(idx % N);
        idx /= N;
    }
    return k;
}

std::size_t GridSpec::ravel(const std::array<int, 3>& k) const {
    std::size_t idx = 0;
    for (int d = n - 1; d >= 0; --d) {
        int kk = ((k[d] % N) + N) % N;
        idx = idx * N + kk;
    }
    return idx;
}

std::array<double, 3> GridSpec::point(std::size_t idx) const {
    auto k = unravel(idx);
    std::array<double, 3> x{0, 0, 0};
    for (int d = 0; d < n; ++d) x[d] = coord(k[d]);
    return x;
}

GridSpec make_grid(int n, int N, double L) {
    if (n < 1 || n > 3) throw std::invalid_argument("make_grid: dimension must be 1, 2 or 3");
    if (!is_power_of_two(N) || N < 16)
        throw std::invalid_argument("make_grid: N must be a power of two >= 16");
    if (!(L > 0)) throw std::invalid_argument("make_grid: box length must be positive");
    GridSpec g;
    g.n = n;
    g.N = N;
    g.L = L;
    g.h = L / N;
    return g;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}
ScalarField& ScalarField::operator-=(const ScalarField& o) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}
ScalarField& ScalarField::operator*=(double c) {
    for (auto& v : values) v *= c;
    return *this;
}
ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double c, ScalarField a) { return a *= c; }

namespace {

double sq_norm(const std::array<double, 3>& x, int n) {
    double s = 0;
    for (int d = 0; d < n; ++d) s += x[d] * x[d];
    return s;
}

void check_boundary_decay(const ScalarField& f, const char* what) {
    // Largest magnitude on the boundary faces k=0 of each axis; periodic
    // images would fold anything bigger than this back into the box.
    const auto& g = f.grid;
    double worst = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto k = g.unravel(i);
        bool boundary = false;
        for (int d = 0; d < g.n; ++d) boundary = boundary || k[d] == 0;
        if (boundary) worst = std::max(worst, std::abs(f[i]));
    }
    if (worst > 1e-12) {
        std::ostringstream msg;
        msg << what << ": effective support exceeds the box (boundary value " << worst << ")";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

ScalarField sample_gaussian(const GridSpec& g, double sigma, const std::array<double, 3>& center) {
    if (!(sigma > 0)) throw std::invalid_argument("gaussian: sigma must be positive");
    ScalarField f(g);
    const double pi = std::acos(-1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto x = g.point(i);
        double r2 = 0;
        for (int d = 0; d < g.n; ++d) r2 += (x[d] - center[d]) * (x[d] - center[d]);
        f[i] = std::exp(-pi * r2 / (sigma * sigma));
    }
    check_boundary_decay(f, "gaussian");
    return f;
}

ScalarField sample_bump(const GridSpec& g, double r) {
    if (!(r > 0) || r > 0.5 * g.L)
        throw std::invalid_argument("bump: radius must lie in (0, L/2]");
    ScalarField f(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        double s2 = sq_norm(g.point(i), g.n) / (r * r);
        f[i] = s2 < 1.0 ? std::exp(-1.0 / (1.0 - s2)) : 0.0;
    }
    return f;
}

ScalarField sample_plane_wave(const GridSpec& g, const std::array<int, 3>& m) {
    ScalarField f(g);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto x = g.point(i);
        double phase = 0;
        for (int d = 0; d < g.n; ++d) phase += m[d] * x[d];
        f[i] = std::cos(two_pi * phase / g.L);
    }
    return f;
}

namespace {

// splitmix64; fixed algorithm so fields are reproducible across platforms.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace

ScalarField sample_random_bandlimited(const GridSpec& g, int K, std::uint64_t seed, int k_lo) {
    if (K < 1 || K >= g.N / 2) throw std::invalid_argument("random_bandlimited: need 1 <= K < N/2");
    if (k_lo < 0 || k_lo > K) throw std::invalid_argument("random_bandlimited: need 0 <= k_lo <= K");
    SplitMix64 rng{seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull};
    const double two_pi = 2.0 * std::acos(-1.0);

    struct Mode {
        std::array<int, 3> m;
        double amp, phase;
    };
    std::vector<Mode> modes;
    std::array<int, 3> m{0, 0, 0};
    std::array<int, 3> lo{-K, g.n > 1 ? -K : 0, g.n > 2 ? -K : 0};
    std::array<int, 3> hi{K, g.n > 1 ? K : 0, g.n > 2 ? K : 0};
    for (m[2] = lo[2]; m[2] <= hi[2]; ++m[2])
        for (m[1] = lo[1]; m[1] <= hi[1]; ++m[1])
            for (m[0] = lo[0]; m[0] <= hi[0]; ++m[0]) {
                int minf = std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[2])});
                if (minf < std::max(k_lo, 1) || minf > K) continue;
                // keep one representative of {m, -m}: the cosine covers both
                int lead = 0;
                for (int d = g.n - 1; d >= 0; --d)
                    if (m[d] != 0) {
                        lead = m[d];
                        break;
                    }
                if (lead < 0) continue;
                modes.push_back({m, 2.0 * rng.uniform() - 1.0, two_pi * rng.uniform()});
            }

    // assemble in frequency space: a cos(2 pi m.x/L + theta) carries
    // coefficients (a/2) e^{+-i theta} L^n at +-m
    Spectrum s(g);
    const double scale = 0.5 * std::pow(g.L, g.n);
    for (const auto& md : modes) {
        std::array<int, 3> pos{0, 0, 0}, neg{0, 0, 0};
        for (int d = 0; d < g.n; ++d) {
            pos[d] = md.m[d] >= 0 ? md.m[d] : md.m[d] + g.N;
            neg[d] = md.m[d] <= 0 ? -md.m[d] : g.N - md.m[d];
        }
        std::complex<double> c = std::polar(scale * md.amp, md.phase);
        s.coeff[g.ravel(pos)] += c;
        s.coeff[g.ravel(neg)] += std::conj(c);
    }
    return inverse_transform(s);
}

ScalarField sample_quadratic_window(const GridSpec& g, double r0, double r1) {
    if (r0 < 0) r0 = g.L / 8;
    if (r1 < 0) r1 = 3 * g.L / 8;
    if (!(0 < r0 && r0 < r1 && r1 <= 0.5 * g.L))
        throw std::invalid_argument("quadratic_window: need 0 < r0 < r1 <= L/2");
    auto b = [](double s) { return s > 0 ? std::exp(-1.0 / s) : 0.0; };
    ScalarField f(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        double r2 = sq_norm(g.point(i), g.n);
        double r = std::sqrt(r2);
        double s = (r1 - r) / (r1 - r0);  // >=1 inside r0, <=0 outside r1
        double w = s >= 1 ? 1.0 : (s <= 0 ? 0.0 : b(s) / (b(s) + b(1 - s)));
        f[i] = r2 * w;
    }
    return f;
}

ScalarField sample_named(const GridSpec& g, const std::string& spec, std::uint64_t seed) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "gaussian") return sample_gaussian(g, args.empty() ? 1.0 : std::stod(args));
    if (name == "bump") return sample_bump(g, args.empty() ? g.L / 4 : std::stod(args));
    if (name == "quadratic_window") return sample_quadratic_window(g);
    if (name == "random_bandlimited")
        return sample_random_bandlimited(g, args.empty() ? 8 : std::stoi(args), seed);
    if (name == "plane_wave") {
        std::array<int, 3> m{0, 0, 0};
        std::stringstream ss(args.empty() ? "1" : args);
        std::string tok;
        for (int d = 0; d < 3 && std::getline(ss, tok, ','); ++d) m[d] = std::stoi(tok);
        return sample_plane_wave(g, m);
    }
    throw std::invalid_argument("unknown generator: " + name);
}

double lp_norm(const ScalarField& f, double p) {
    if (std::isinf(p)) return linf_norm(f);
    if (!(p >= 1)) throw std::invalid_argument("lp_norm: p must be >= 1");
    const double cell = std::pow(f.grid.h, f.grid.n);
    double s = 0;
    for (double v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * cell, 1.0 / p);
}

double linf_norm(const ScalarField& f) {
    double m = 0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace sqfn
