#include "sqfn/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sqfn {

namespace {

std::mutex g_plan_mutex;  // fftw planning is not thread-safe

struct FftWorkspace {
    int n = 0, N = 0;
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr, bwd = nullptr;

    void ensure(int n_, int N_) {
        if (n == n_ && N == N_) return;
        release();
        n = n_;
        N = N_;
        std::size_t total = 1;
        for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(N);
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        buf = fftw_alloc_complex(total);
        int dims[3] = {N, N, N};
        fwd = fftw_plan_dft(n, dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft(n, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    void release() {
        if (!buf) return;
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
        buf = nullptr;
    }
    ~FftWorkspace() { release(); }
};

thread_local FftWorkspace tl_fft;

// Parity of the sum of signed DFT indices; converts between the DFT about
// index 0 and the transform about the box center -L/2 + k*h.
inline int index_parity(const GridSpec& g, std::size_t idx) {
    int s = 0;
    for (int d = 0; d < g.n; ++d) {
        s += static_cast<int>(idx % g.N);
        idx /= g.N;
    }
    return s & 1;
}

}  // namespace

std::array<double, 3> Spectrum::xi(std::size_t idx) const {
    std::array<double, 3> out{0, 0, 0};
    for (int d = 0; d < grid.n; ++d) {
        out[d] = signed_index(static_cast<int>(idx % grid.N)) / grid.L;
        idx /= grid.N;
    }
    return out;
}

double Spectrum::xi_norm(std::size_t idx) const {
    auto v = xi(idx);
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

std::size_t Spectrum::negated(std::size_t idx) const {
    std::size_t out = 0, mul = 1;
    for (int d = 0; d < grid.n; ++d) {
        int m = static_cast<int>(idx % grid.N);
        out += static_cast<std::size_t>((grid.N - m) % grid.N) * mul;
        mul *= grid.N;
        idx /= grid.N;
    }
    return out;
}

Spectrum transform(const ScalarField& f) {
    const auto& g = f.grid;
    tl_fft.ensure(g.n, g.N);
    const std::size_t total = g.size();
    for (std::size_t i = 0; i < total; ++i) {
        tl_fft.buf[i][0] = f[i];
        tl_fft.buf[i][1] = 0.0;
    }
    fftw_execute(tl_fft.fwd);
    Spectrum s(g);
    const double scale = std::pow(g.h, g.n);
    for (std::size_t i = 0; i < total; ++i) {
        double sign = index_parity(g, i) ? -scale : scale;
        s.coeff[i] = {sign * tl_fft.buf[i][0], sign * tl_fft.buf[i][1]};
    }
    return s;
}

ScalarField inverse_transform(const Spectrum& s) {
    const auto& g = s.grid;
    tl_fft.ensure(g.n, g.N);
    const std::size_t total = g.size();
    for (std::size_t i = 0; i < total; ++i) {
        double sign = index_parity(g, i) ? -1.0 : 1.0;
        tl_fft.buf[i][0] = sign * s.coeff[i].real();
        tl_fft.buf[i][1] = sign * s.coeff[i].imag();
    }
    fftw_execute(tl_fft.bwd);
    ScalarField f(g);
    const double scale = 1.0 / std::pow(g.L, g.n);
    for (std::size_t i = 0; i < total; ++i) f[i] = scale * tl_fft.buf[i][0];
    return f;
}

ScalarField apply_multiplier(const ScalarField& f, const Multiplier& m) {
    Spectrum s = transform(f);
    std::vector<std::complex<double>> mv(s.coeff.size());
    double max_abs = 0;
    for (std::size_t i = 0; i < mv.size(); ++i) {
        mv[i] = m(s.xi(i));
        max_abs = std::max(max_abs, std::abs(mv[i]));
    }
    const double tol = 1e-12 * std::max(max_abs, 1.0);
    for (std::size_t i = 0; i < mv.size(); ++i) {
        if (std::abs(mv[s.negated(i)] - std::conj(mv[i])) > tol)
            throw std::invalid_argument(
                "apply_multiplier: multiplier violates conjugate symmetry, result would be complex");
    }
    for (std::size_t i = 0; i < mv.size(); ++i) s.coeff[i] *= mv[i];
    return inverse_transform(s);
}

ScalarField convolve_spectrum(const ScalarField& f, const Spectrum& kernel) {
    if (!(kernel.grid == f.grid)) throw std::invalid_argument("convolve_spectrum: grid mismatch");
    Spectrum s = transform(f);
    for (std::size_t i = 0; i < s.coeff.size(); ++i) s.coeff[i] *= kernel.coeff[i];
    return inverse_transform(s);
}

namespace {

// Odd homogeneous multipliers have no conjugate-symmetric value on Nyquist
// planes; they are zeroed there (and at xi = 0).
bool on_nyquist(const GridSpec& g, std::size_t idx) {
    for (int d = 0; d < g.n; ++d) {
        if (static_cast<int>(idx % g.N) == g.N / 2) return true;
        idx /= g.N;
    }
    return false;
}

ScalarField component_multiplier(
    const ScalarField& f, const std::function<std::complex<double>(const std::array<double, 3>&)>& m,
    bool zero_nyquist) {
    Spectrum s = transform(f);
    for (std::size_t i = 0; i < s.coeff.size(); ++i) {
        if (zero_nyquist && on_nyquist(s.grid, i)) {
            s.coeff[i] = 0;
            continue;
        }
        s.coeff[i] *= m(s.xi(i));
    }
    return inverse_transform(s);
}

}  // namespace

VectorField riesz(const ScalarField& g) {
    VectorField out(g.grid);
    for (int j = 0; j < g.grid.n; ++j) {
        out[j] = component_multiplier(
            g,
            [j](const std::array<double, 3>& xi) -> std::complex<double> {
                double norm = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
                if (norm == 0) return 0;
                return {0.0, -xi[j] / norm};
            },
            true);
    }
    return out;
}

ScalarField riesz_divergence(const VectorField& g) {
    ScalarField out(g.grid());
    for (int j = 0; j < g.dim(); ++j) {
        VectorField r = riesz(g[j]);
        out += r[j];
    }
    return out;
}

ScalarField half_laplacian(const ScalarField& f) {
    const double two_pi = 2.0 * std::acos(-1.0);
    return component_multiplier(
        f,
        [two_pi](const std::array<double, 3>& xi) -> std::complex<double> {
            return two_pi * std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        },
        false);
}

VectorField gradient(const ScalarField& f) {
    const double two_pi = 2.0 * std::acos(-1.0);
    VectorField out(f.grid);
    for (int j = 0; j < f.grid.n; ++j) {
        out[j] = component_multiplier(
            f,
            [j, two_pi](const std::array<double, 3>& xi) -> std::complex<double> {
                return {0.0, two_pi * xi[j]};
            },
            true);
    }
    return out;
}

ScalarField mollify(const ScalarField& f, double eps) {
    const auto& g = f.grid;
    if (eps < 2 * g.h) throw std::invalid_argument("mollify: eps must be >= 2h");
    if (eps > g.L / 4) throw std::invalid_argument("mollify: eps must be <= L/4");
    ScalarField kernel(g);
    double mass = 0;
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        auto x = g.point(i);
        double s2 = 0;
        for (int d = 0; d < g.n; ++d) s2 += x[d] * x[d];
        s2 /= eps * eps;
        double v = s2 < 1.0 ? std::exp(-1.0 / (1.0 - s2)) : 0.0;
        kernel[i] = v;
        mass += v;
    }
    const double cell = std::pow(g.h, g.n);
    kernel *= 1.0 / (mass * cell);
    return convolve_spectrum(f, transform(kernel));
}

double RadialProfile::max_abs_h() const {
    double m = 0;
    for (double v : h) m = std::max(m, std::abs(v));
    return m;
}

double RadialProfile::interp(double s) const {
    if (k.empty() || s < k.front() || s > k.back()) return 0.0;
    auto it = std::lower_bound(k.begin(), k.end(), s);
    std::size_t j = static_cast<std::size_t>(it - k.begin());
    if (j == 0) return h[0];
    double w = (s - k[j - 1]) / (k[j] - k[j - 1]);
    return (1 - w) * h[j - 1] + w * h[j];
}

RadialProfile radial_profile(const VectorField& kernel) {
    const auto& g = kernel.grid();

    // spatial oddness gate: k(-x) = -k(x) on the lattice
    double max_abs = 0, odd_resid = 0;
    for (int j = 0; j < g.n; ++j)
        for (double v : kernel[j].values) max_abs = std::max(max_abs, std::abs(v));
    for (int j = 0; j < g.n; ++j) {
        const auto& c = kernel[j];
        for (std::size_t i = 0; i < c.size(); ++i) {
            auto idx = g.unravel(i);
            std::array<int, 3> neg{0, 0, 0};
            bool skip = false;
            for (int d = 0; d < g.n; ++d) {
                if (idx[d] == 0) skip = true;  // -L/2 face has no lattice mirror
                neg[d] = (g.N - idx[d]) % g.N;
            }
            if (skip) continue;
            odd_resid = std::max(odd_resid, std::abs(c[g.ravel(neg)] + c[i]));
        }
    }
    if (odd_resid > 1e-12 * std::max(max_abs, 1e-300))
        throw std::invalid_argument("radial_profile: kernel is not odd on the lattice");

    std::vector<Spectrum> spec;
    spec.reserve(g.n);
    for (int j = 0; j < g.n; ++j) spec.push_back(transform(kernel[j]));

    const double xi_max = std::sqrt(double(g.n)) * (g.N / 2) / g.L;
    const std::size_t nbins = static_cast<std::size_t>(std::floor(xi_max * g.L)) + 1;
    std::vector<double> sum(nbins, 0.0);
    std::vector<std::size_t> count(nbins, 0);
    std::vector<double> hval(g.size(), 0.0);

    for (std::size_t i = 0; i < g.size(); ++i) {
        double norm = spec[0].xi_norm(i);
        if (norm == 0) continue;
        auto u = spec[0].xi(i);
        double hv = 0;
        for (int j = 0; j < g.n; ++j) hv += spec[j].coeff[i].imag() * u[j] / norm;
        hval[i] = hv;
        std::size_t b = static_cast<std::size_t>(std::llround(norm * g.L));
        if (b < nbins) {
            sum[b] += hv;
            ++count[b];
        }
    }

    RadialProfile prof;
    for (std::size_t b = 0; b < nbins; ++b) {
        if (count[b] == 0) continue;
        prof.k.push_back(static_cast<double>(b) / g.L);
        prof.h.push_back(sum[b] / static_cast<double>(count[b]));
    }

    // transverse / anti-Hermitian residual against the model i*xi/|xi|*h
    double max_h = prof.max_abs_h();
    double resid = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double norm = spec[0].xi_norm(i);
        if (norm == 0) continue;
        auto u = spec[0].xi(i);
        double r2 = 0;
        for (int j = 0; j < g.n; ++j) {
            double model_im = hval[i] * u[j] / norm;
            double dre = spec[j].coeff[i].real();
            double dim = spec[j].coeff[i].imag() - model_im;
            r2 += dre * dre + dim * dim;
        }
        resid = std::max(resid, std::sqrt(r2));
    }
    prof.rho = max_h > 0 ? resid / max_h : resid;
    return prof;
}

}  // namespace sqfn
