#include "sqfn/squarefn.hpp"

#include <cmath>
#include <stdexcept>

#include "sqfn/parallel.hpp"

namespace sqfn {

ScaleFamily make_family(const ScaleGrid& scales, const GridSpec& g,
                        const std::function<ScalarField(double t)>& fn) {
    ScaleFamily fam;
    fam.scales = scales;
    fam.fields.assign(scales.nodes.size(), ScalarField(g));
    parallel_for(scales.nodes.size(), [&](std::size_t j) { fam.fields[j] = fn(scales.nodes[j]); });
    return fam;
}

ScalarField scale_integrate(const ScaleFamily& fam) {
    if (fam.fields.empty()) throw std::invalid_argument("scale_integrate: empty family");
    const double w = fam.scales.weight();
    ScalarField out(fam.fields.front().grid);
    for (const auto& g : fam.fields)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += g[i] * g[i];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(w * out[i]);
    return out;
}

ScaleFamily family_T(const ScalarField& f, const ScaleGrid& scales) {
    return make_family(scales, f.grid, [&](double t) {
        ScalarField g = f - sphere_mean(f, t);
        g *= 1.0 / t;
        return g;
    });
}

ScalarField square_T(const ScalarField& f, const ScaleGrid& scales) {
    return scale_integrate(family_T(f, scales));
}

ScaleFamily family_S(const ScalarField& f, const ScaleGrid& scales) {
    return make_family(scales, f.grid, [&](double t) {
        ScalarField g = f - ball_mean(f, t);
        g *= 1.0 / t;
        return g;
    });
}

ScalarField square_S(const ScalarField& f, const ScaleGrid& scales) {
    return scale_integrate(family_S(f, scales));
}

namespace {

ScalarField square_via_kernel(const VectorField& v, KernelKind kind, const ScaleGrid& scales) {
    KernelSpec spec{kind};
    ScaleFamily fam = make_family(scales, v.grid(),
                                  [&](double t) { return kernel_convolve(spec, v, t); });
    return scale_integrate(fam);
}

}  // namespace

ScalarField square_T_gradient_path(const ScalarField& f, const ScaleGrid& scales) {
    return square_via_kernel(gradient(f), KernelKind::phi, scales);
}

ScalarField square_S_gradient_path(const ScalarField& f, const ScaleGrid& scales) {
    return square_via_kernel(gradient(f), KernelKind::psi, scales);
}

ScalarField square_W(const ScalarField& f, const ScaleGrid& scales) {
    return square_via_kernel(gradient(f), KernelKind::eta, scales);
}

ScaleFamily family_T_tilde(const ScalarField& g, const ScaleGrid& scales) {
    VectorField rg = riesz(g);
    KernelSpec spec{KernelKind::phi};
    return make_family(scales, g.grid, [&](double t) { return kernel_convolve(spec, rg, t); });
}

ScalarField square_T_tilde(const ScalarField& g, const ScaleGrid& scales) {
    return scale_integrate(family_T_tilde(g, scales));
}

ScalarField square_S_tilde(const ScalarField& g, const ScaleGrid& scales) {
    return square_via_kernel(riesz(g), KernelKind::psi, scales);
}

ScalarField sato_sigma(const std::function<double(const std::array<double, 3>&)>& omega,
                       double eps, const ScalarField& f, const ScaleGrid& scales) {
    if (!(eps > 0)) throw std::invalid_argument("sato_sigma: eps must be positive");
    double mz = omega_mean_zero(f.grid.n, omega);
    if (std::abs(mz) > 1e-8) throw std::invalid_argument("sato_sigma: Omega is not mean-zero");
    KernelSpec spec{KernelKind::zeta, eps, omega};
    ScaleFamily fam = make_family(scales, f.grid,
                                  [&](double t) { return kernel_convolve(spec, f, t); });
    return scale_integrate(fam);
}

ScalarField mu_omega(const std::function<double(const std::array<double, 3>&)>& omega,
                     const ScalarField& f, const ScaleGrid& scales) {
    // kernel Omega(y')/|y|^(n-1) truncated at t is the eps = 1 zeta kernel
    // scaled by t; folding the dt/t^3 measure to dt/t cancels that factor.
    return sato_sigma(omega, 1.0, f, scales);
}

ScalarField square_T_1d(const ScalarField& f, const ScaleGrid& scales) {
    if (f.grid.n != 1) throw std::invalid_argument("square_T_1d: field must be one-dimensional");
    const double two_pi = 2.0 * std::acos(-1.0);
    ScaleFamily fam = make_family(scales, f.grid, [&](double t) {
        // f(x+t)+f(x-t)-2f(x) has multiplier 2cos(2 pi t xi) - 2
        ScalarField g = apply_multiplier(f, [&](const std::array<double, 3>& xi) {
            return std::complex<double>(2.0 * std::cos(two_pi * t * xi[0]) - 2.0, 0.0);
        });
        g *= 1.0 / t;
        return g;
    });
    return scale_integrate(fam);
}

ScalarField square_D_fullspace(const ScalarField& f, const ScaleGrid& scales, int angular_nodes) {
    const auto& grid = f.grid;
    const double two_pi = 2.0 * std::acos(-1.0);
    const double area = unit_sphere_area(grid.n);

    // directions and weights over half the sphere (|D^2| is even in z)
    std::vector<std::array<double, 3>> dirs;
    std::vector<double> wts;
    if (grid.n == 1) {
        dirs.push_back({1, 0, 0});
        wts.push_back(1);
    } else if (grid.n == 2) {
        int Q = std::max(angular_nodes / 2, 16);
        for (int q = 0; q < Q; ++q) {
            double th = std::acos(-1.0) * (q + 0.5) / Q;  // half circle
            dirs.push_back({std::cos(th), std::sin(th), 0});
            wts.push_back(1.0 / Q);
        }
    } else {
        int P = std::max(angular_nodes / 2, 16), Q = std::max(angular_nodes, 32);
        double wsum = 0;
        for (int i = 0; i < P; ++i) {
            double th = std::acos(-1.0) * (i + 0.5) / (2 * P);  // upper half only
            for (int q = 0; q < Q; ++q) {
                double ph = two_pi * (q + 0.5) / Q;
                dirs.push_back({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                std::cos(th)});
                wts.push_back(std::sin(th));
                wsum += std::sin(th);
            }
        }
        for (auto& w : wts) w /= wsum;
    }

    ScaleFamily fam = make_family(scales, grid, [&](double t) {
        ScalarField acc(grid);
        for (std::size_t q = 0; q < dirs.size(); ++q) {
            // f(x+tz)+f(x-tz) via the real multiplier 2cos(2 pi t z.xi)
            ScalarField sum2 = apply_multiplier(f, [&](const std::array<double, 3>& xi) {
                double dot = 0;
                for (int d = 0; d < grid.n; ++d) dot += dirs[q][d] * xi[d];
                return std::complex<double>(2.0 * std::cos(two_pi * t * dot), 0.0);
            });
            for (std::size_t i = 0; i < acc.size(); ++i) {
                double d2 = sum2[i] - 2.0 * f[i];
                acc[i] += wts[q] * d2 * d2;
            }
        }
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::sqrt(area * acc[i]) / t;
        return acc;
    });
    return scale_integrate(fam);
}

}  // namespace sqfn
