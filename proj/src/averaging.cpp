#include "sqfn/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace sqfn {

namespace {

const double kPi = std::acos(-1.0);

}  // namespace

double ScaleGrid::weight() const { return std::log(2.0) / M; }
double ScaleGrid::effective_lo() const { return t_min * std::pow(2.0, -0.5 / M); }
double ScaleGrid::effective_hi() const { return nodes.back() * std::pow(2.0, 0.5 / M); }

ScaleGrid make_scales(const GridSpec& g, double t_min, double t_max, int M) {
    if (M < 1) throw std::invalid_argument("make_scales: M must be >= 1");
    if (t_min < g.h * (1 - 1e-12)) throw std::invalid_argument("make_scales: t_min must be >= h");
    if (t_max > g.L / 4 * (1 + 1e-12))
        throw std::invalid_argument("make_scales: t_max must be <= L/4");
    if (!(t_min < t_max)) throw std::invalid_argument("make_scales: need t_min < t_max");
    ScaleGrid s;
    s.t_min = t_min;
    s.t_max = t_max;
    s.M = M;
    for (int j = 0;; ++j) {
        double t = t_min * std::pow(2.0, double(j) / M);
        if (t > t_max * (1 + 1e-12)) break;
        s.nodes.push_back(t);
    }
    return s;
}

double unit_ball_volume(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return kPi;
        case 3: return 4.0 * kPi / 3.0;
    }
    throw std::invalid_argument("unit_ball_volume: dimension must be 1..3");
}

double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

// --- radial multipliers ----------------------------------------------------

namespace {

double sphere_symbol(int n, double z) {
    // Fourier transform of the normalized sphere measure at |xi|, z = 2 pi t |xi|
    switch (n) {
        case 1: return std::cos(z);
        case 2: return z == 0.0 ? 1.0 : std::cyl_bessel_j(0.0, z);
        case 3: return z < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
    }
    return 0;
}

double ball_symbol(int n, double z) {
    switch (n) {
        case 1: return z < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
        case 2: return z < 1e-8 ? 1.0 - z * z / 8.0 : 2.0 * std::cyl_bessel_j(1.0, z) / z;
        case 3:
            return z < 1e-4 ? 1.0 - z * z / 10.0
                            : 3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z);
    }
    return 0;
}

struct MultKey {
    int op;  // 0 sphere, 1 ball
    int n, N;
    double L, t;
    bool operator<(const MultKey& o) const {
        return std::tie(op, n, N, L, t) < std::tie(o.op, o.n, o.N, o.L, o.t);
    }
};

std::mutex g_mult_mutex;
std::map<MultKey, std::vector<double>> g_mult_cache;

const std::vector<double>& mean_multiplier(const GridSpec& g, double t, int op) {
    MultKey key{op, g.n, g.N, g.L, t};
    std::lock_guard<std::mutex> lock(g_mult_mutex);
    auto it = g_mult_cache.find(key);
    if (it != g_mult_cache.end()) return it->second;
    Spectrum probe(g);
    std::vector<double> mv(g.size());
    for (std::size_t i = 0; i < mv.size(); ++i) {
        double z = 2.0 * kPi * t * probe.xi_norm(i);
        mv[i] = op == 0 ? sphere_symbol(g.n, z) : ball_symbol(g.n, z);
    }
    return g_mult_cache.emplace(key, std::move(mv)).first->second;
}

ScalarField apply_real_multiplier(const ScalarField& f, const std::vector<double>& mv) {
    Spectrum s = transform(f);
    for (std::size_t i = 0; i < s.coeff.size(); ++i) s.coeff[i] *= mv[i];
    return inverse_transform(s);
}

void check_scale(const GridSpec& g, double t) {
    if (t < g.h * (1 - 1e-12) || t > g.L / 4 * (1 + 1e-12))
        throw std::invalid_argument("scale t must lie in [h, L/4]");
}

}  // namespace

ScalarField sphere_mean(const ScalarField& f, double t) {
    check_scale(f.grid, t);
    return apply_real_multiplier(f, mean_multiplier(f.grid, t, 0));
}

ScalarField ball_mean(const ScalarField& f, double t) {
    check_scale(f.grid, t);
    return apply_real_multiplier(f, mean_multiplier(f.grid, t, 1));
}

// --- sampled kernels --------------------------------------------------------

namespace {

double norm_of(const std::array<double, 3>& x, int n) {
    double s = 0;
    for (int d = 0; d < n; ++d) s += x[d] * x[d];
    return std::sqrt(s);
}

}  // namespace

namespace {

// Fraction of the lattice cell centered at x that lies inside the ball
// |y| <= t, by subcell midpoints. Plain 0/1 inclusion of boundary cells
// costs a first-order quadrature error that dominates every convolution;
// fractional weights push the truncation error to second order.
double cell_inside_fraction(const GridSpec& g, const std::array<double, 3>& x, double t) {
    double r = norm_of(x, g.n);
    double halfdiag = 0.5 * g.h * std::sqrt(static_cast<double>(g.n));
    if (r <= t - halfdiag) return 1.0;
    if (r >= t + halfdiag) return 0.0;
    const int S = 8;
    int count = 1;
    for (int d = 0; d < g.n; ++d) count *= S;
    int inside = 0;
    for (int c = 0; c < count; ++c) {
        int rem = c;
        std::array<double, 3> y = x;
        for (int d = 0; d < g.n; ++d) {
            y[d] += ((rem % S + 0.5) / S - 0.5) * g.h;
            rem /= S;
        }
        if (norm_of(y, g.n) <= t) ++inside;
    }
    return static_cast<double>(inside) / count;
}

}  // namespace

VectorField sample_vector_kernel(const GridSpec& g, KernelKind kind, double t) {
    if (kind == KernelKind::zeta)
        throw std::invalid_argument("sample_vector_kernel: zeta is a scalar kernel");
    VectorField k(g);
    const double area = unit_sphere_area(g.n);
    const double halfdiag = 0.5 * g.h * std::sqrt(static_cast<double>(g.n));
    const double near = 4.0 * g.h;  // midpoint sampling of x/|x|^n is poor this close to 0
    const double phi_w = kind == KernelKind::eta ? 0.0 : 1.0;
    const double eta_w = kind == KernelKind::phi ? 0.0 : (kind == KernelKind::eta ? 1.0 : -1.0);
    const double eta_factor = 1.0 / (std::pow(t, g.n + 1) * area);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto x = g.point(i);
        double r = norm_of(x, g.n);
        if (r == 0.0) continue;  // origin cell: odd kernel averages to 0
        if (r >= t + halfdiag) continue;
        if (r <= t - halfdiag && r >= near) {
            double pf = phi_w / (t * area * std::pow(r, g.n));
            for (int j = 0; j < g.n; ++j) k[j][i] = (pf + eta_w * eta_factor) * x[j];
            continue;
        }
        // boundary or near-origin cell: subsampled average of the truncated kernel
        const int S = g.n == 3 ? 8 : 16;
        int count = 1;
        for (int d = 0; d < g.n; ++d) count *= S;
        std::array<double, 3> acc{0, 0, 0};
        for (int c = 0; c < count; ++c) {
            int rem = c;
            std::array<double, 3> y = x;
            for (int d = 0; d < g.n; ++d) {
                y[d] += ((rem % S + 0.5) / S - 0.5) * g.h;
                rem /= S;
            }
            double ry = norm_of(y, g.n);
            if (ry == 0.0 || ry > t) continue;
            double fy = phi_w / (t * area * std::pow(ry, g.n)) + eta_w * eta_factor;
            for (int j = 0; j < g.n; ++j) acc[j] += fy * y[j];
        }
        for (int j = 0; j < g.n; ++j) k[j][i] = acc[j] / count;
    }
    return k;
}

namespace {

// Cell average of |x|^(eps-n) Omega(x/|x|) over the centered cell [-h/2,h/2]^n,
// by exact radial integration and angular quadrature up to the cell boundary.
double zeta_origin_cell_average(const GridSpec& g, const KernelSpec& spec) {
    const double half = g.h / 2;
    const double eps = spec.eps;
    double integral = 0;
    if (g.n == 1) {
        integral = std::pow(half, eps) / eps *
                   (spec.omega({1, 0, 0}) + spec.omega({-1, 0, 0}));
    } else if (g.n == 2) {
        const int Q = 512;
        double s = 0;
        for (int q = 0; q < Q; ++q) {
            double th = 2 * kPi * (q + 0.5) / Q;
            double c = std::cos(th), sn = std::sin(th);
            double R = half / std::max(std::abs(c), std::abs(sn));
            s += spec.omega({c, sn, 0}) * std::pow(R, eps);
        }
        integral = (2 * kPi / Q) * s / eps;
    } else {
        const int P = 64, Q = 128;
        double s = 0, wsum = 0;
        for (int i = 0; i < P; ++i) {
            double th = kPi * (i + 0.5) / P;
            double w = std::sin(th);
            for (int q = 0; q < Q; ++q) {
                double ph = 2 * kPi * (q + 0.5) / Q;
                std::array<double, 3> u{std::sin(th) * std::cos(ph),
                                        std::sin(th) * std::sin(ph), std::cos(th)};
                double R = half / std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[2])});
                s += w * spec.omega(u) * std::pow(R, eps);
                wsum += w;
            }
        }
        integral = unit_sphere_area(3) * s / wsum / eps;
    }
    return integral / std::pow(g.h, g.n);
}

}  // namespace

ScalarField sample_zeta_kernel(const GridSpec& g, const KernelSpec& spec, double t) {
    if (spec.kind != KernelKind::zeta)
        throw std::invalid_argument("sample_zeta_kernel: kernel is not zeta");
    if (!(spec.eps > 0)) throw std::invalid_argument("zeta kernel: eps must be positive");
    if (!spec.omega) throw std::invalid_argument("zeta kernel: Omega not set");
    ScalarField k(g);
    const double tpow = std::pow(t, -spec.eps);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto x = g.point(i);
        double r = norm_of(x, g.n);
        if (r == 0.0) continue;  // origin cell set below
        double frac = cell_inside_fraction(g, x, t);
        if (frac == 0.0) continue;
        std::array<double, 3> u{0, 0, 0};
        for (int d = 0; d < g.n; ++d) u[d] = x[d] / r;
        k[i] = frac * tpow * std::pow(r, spec.eps - g.n) * spec.omega(u);
    }
    // origin cell average, scaled: zeta_t cell avg = t^{-eps} * cellavg(|x|^{eps-n} Omega)
    std::array<int, 3> origin{g.N / 2, g.N / 2, g.N / 2};
    k[g.ravel(origin)] = tpow * zeta_origin_cell_average(g, spec);
    return k;
}

// --- kernel spectrum cache ---------------------------------------------------

namespace {

struct KernelKey {
    int kind, comp, n, N;
    double L, t;
    bool operator<(const KernelKey& o) const {
        return std::tie(kind, comp, n, N, L, t) < std::tie(o.kind, o.comp, o.n, o.N, o.L, o.t);
    }
};

std::mutex g_kernel_mutex;
std::map<KernelKey, Spectrum> g_kernel_cache;

}  // namespace

namespace {

// Kernel transform estimated on a refined lattice and restricted to the
// coarse dual lattice. The refinement sharpens the quadrature of the kernel's
// Fourier integral (the boundary jump and the origin singularity are the
// costly features); the restriction is exact for fields carried by the
// coarse lattice. Coarse Nyquist planes are zeroed: the odd kernels have no
// conjugate-symmetric extension there.
Spectrum refined_kernel_spectrum(const GridSpec& g, KernelKind kind, int component, double t) {
    const int R = g.n == 3 ? 2 : 4;
    GridSpec gf = make_grid(g.n, R * g.N, g.L);
    VectorField kf = sample_vector_kernel(gf, kind, t);
    Spectrum sf = transform(kf[component]);
    Spectrum s(g);
    for (std::size_t i = 0; i < s.coeff.size(); ++i) {
        auto a = g.unravel(i);
        std::array<int, 3> af{0, 0, 0};
        bool nyquist = false;
        for (int d = 0; d < g.n; ++d) {
            int m = a[d] < g.N / 2 ? a[d] : a[d] - g.N;
            if (m == -g.N / 2) nyquist = true;
            af[d] = m >= 0 ? m : m + gf.N;
        }
        s.coeff[i] = nyquist ? 0.0 : sf.coeff[gf.ravel(af)];
    }
    return s;
}

}  // namespace

const Spectrum& kernel_spectrum(const GridSpec& g, KernelKind kind, int component, double t) {
    check_scale(g, t);
    KernelKey key{static_cast<int>(kind), component, g.n, g.N, g.L, t};
    {
        std::lock_guard<std::mutex> lock(g_kernel_mutex);
        auto it = g_kernel_cache.find(key);
        if (it != g_kernel_cache.end()) return it->second;
    }
    Spectrum s = refined_kernel_spectrum(g, kind, component, t);
    std::lock_guard<std::mutex> lock(g_kernel_mutex);
    return g_kernel_cache.emplace(key, std::move(s)).first->second;
}

ScalarField kernel_convolve(const KernelSpec& spec, const VectorField& v, double t) {
    if (spec.kind == KernelKind::zeta)
        throw std::invalid_argument("kernel_convolve: zeta acts on scalar fields");
    const GridSpec& g = v.grid();
    check_scale(g, t);
    ScalarField out(g);
    for (int j = 0; j < g.n; ++j)
        out += convolve_spectrum(v[j], kernel_spectrum(g, spec.kind, j, t));
    return out;
}

ScalarField kernel_convolve(const KernelSpec& spec, const ScalarField& f, double t) {
    if (spec.kind != KernelKind::zeta)
        throw std::invalid_argument("kernel_convolve: scalar path is for zeta kernels");
    check_scale(f.grid, t);
    double mz = omega_mean_zero(f.grid.n, spec.omega);
    if (std::abs(mz) > 1e-8)
        throw std::invalid_argument("kernel_convolve: Omega is not mean-zero on the sphere");
    return convolve_spectrum(f, transform(sample_zeta_kernel(f.grid, spec, t)));
}

// --- direct oracles -----------------------------------------------------------

namespace {

struct SupportEntry {
    std::array<int, 3> offset;  // lattice offset from the kernel origin
    double value;
};

std::vector<SupportEntry> support_of(const ScalarField& k) {
    const auto& g = k.grid;
    std::vector<SupportEntry> sup;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] == 0.0) continue;
        auto idx = g.unravel(i);
        std::array<int, 3> off{0, 0, 0};
        for (int d = 0; d < g.n; ++d) off[d] = idx[d] - g.N / 2;  // origin at index N/2
        sup.push_back({off, k[i]});
    }
    return sup;
}

ScalarField convolve_direct(const ScalarField& k, const ScalarField& f) {
    const auto& g = f.grid;
    auto sup = support_of(k);
    const double cell = std::pow(g.h, g.n);
    ScalarField out(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto idx = g.unravel(i);
        double acc = 0;
        for (const auto& e : sup) {
            std::array<int, 3> j{0, 0, 0};
            for (int d = 0; d < g.n; ++d) j[d] = idx[d] - e.offset[d];
            acc += e.value * f[g.ravel(j)];
        }
        out[i] = acc * cell;
    }
    return out;
}

}  // namespace

ScalarField kernel_convolve_direct(const KernelSpec& spec, const VectorField& v, double t) {
    const GridSpec& g = v.grid();
    check_scale(g, t);
    VectorField k = sample_vector_kernel(g, spec.kind, t);
    ScalarField out(g);
    for (int j = 0; j < g.n; ++j) out += convolve_direct(k[j], v[j]);
    return out;
}

ScalarField kernel_convolve_direct(const KernelSpec& spec, const ScalarField& f, double t) {
    check_scale(f.grid, t);
    return convolve_direct(sample_zeta_kernel(f.grid, spec, t), f);
}

// --- quadrature oracles ---------------------------------------------------------

double interp_field(const ScalarField& f, const std::array<double, 3>& x) {
    const auto& g = f.grid;
    std::array<int, 3> k0{0, 0, 0};
    std::array<double, 3> w{0, 0, 0};
    for (int d = 0; d < g.n; ++d) {
        double u = (x[d] + 0.5 * g.L) / g.h;
        double fl = std::floor(u);
        k0[d] = static_cast<int>(fl);
        w[d] = u - fl;
    }
    double acc = 0;
    int corners = 1 << g.n;
    for (int c = 0; c < corners; ++c) {
        std::array<int, 3> kk{0, 0, 0};
        double weight = 1;
        for (int d = 0; d < g.n; ++d) {
            int bit = (c >> d) & 1;
            kk[d] = k0[d] + bit;
            weight *= bit ? w[d] : 1 - w[d];
        }
        acc += weight * f[g.ravel(kk)];
    }
    return acc;
}

namespace {

void check_probe(const GridSpec& g, const std::array<double, 3>& x, double t) {
    for (int d = 0; d < g.n; ++d)
        if (std::abs(x[d]) + t > 0.5 * g.L)
            throw std::invalid_argument("probe sphere/ball leaves the box");
}

}  // namespace

double sphere_mean_direct(const ScalarField& f, const std::array<double, 3>& x, double t,
                          int angular_nodes) {
    const auto& g = f.grid;
    check_probe(g, x, t);
    if (g.n == 1)
        return 0.5 * (interp_field(f, {x[0] + t, 0, 0}) + interp_field(f, {x[0] - t, 0, 0}));
    if (g.n == 2) {
        int Q = std::max(angular_nodes, 64);
        double s = 0;
        for (int q = 0; q < Q; ++q) {
            double th = 2 * kPi * (q + 0.5) / Q;
            s += interp_field(f, {x[0] + t * std::cos(th), x[1] + t * std::sin(th), 0});
        }
        return s / Q;
    }
    int P = std::max(angular_nodes / 2, 32), Q = std::max(angular_nodes, 64);
    double s = 0, wsum = 0;
    for (int i = 0; i < P; ++i) {
        double th = kPi * (i + 0.5) / P;
        double w = std::sin(th);
        for (int q = 0; q < Q; ++q) {
            double ph = 2 * kPi * (q + 0.5) / Q;
            s += w * interp_field(f, {x[0] + t * std::sin(th) * std::cos(ph),
                                      x[1] + t * std::sin(th) * std::sin(ph),
                                      x[2] + t * std::cos(th)});
            wsum += w;
        }
    }
    return s / wsum;
}

double ball_mean_direct(const ScalarField& f, const std::array<double, 3>& x, double t,
                        int radial_nodes, int angular_nodes) {
    const auto& g = f.grid;
    check_probe(g, x, t);
    double num = 0, den = 0;
    for (int i = 0; i < radial_nodes; ++i) {
        double r = (i + 0.5) * t / radial_nodes;
        double w = std::pow(r, g.n - 1);
        num += w * sphere_mean_direct(f, x, r, angular_nodes);
        den += w;
    }
    return num / den;
}

double omega_mean_zero(int n, const std::function<double(const std::array<double, 3>&)>& omega) {
    if (!omega) throw std::invalid_argument("omega_mean_zero: Omega not set");
    if (n == 1) return omega({1, 0, 0}) + omega({-1, 0, 0});
    if (n == 2) {
        const int Q = 1024;
        double s = 0;
        for (int q = 0; q < Q; ++q) {
            double th = 2 * kPi * (q + 0.5) / Q;
            s += omega({std::cos(th), std::sin(th), 0});
        }
        return 2 * kPi * s / Q;
    }
    const int P = 64, Q = 128;
    double s = 0, wsum = 0;
    for (int i = 0; i < P; ++i) {
        double th = kPi * (i + 0.5) / P;
        double w = std::sin(th);
        for (int q = 0; q < Q; ++q) {
            double ph = 2 * kPi * (q + 0.5) / Q;
            s += w * omega({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                            std::cos(th)});
            wsum += w;
        }
    }
    return unit_sphere_area(3) * s / wsum;
}

}  // namespace sqfn
