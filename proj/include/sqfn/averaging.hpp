#pragma once

#include <functional>

#include "sqfn/field.hpp"
#include "sqfn/spectral.hpp"

namespace sqfn {

/// Geometric quadrature nodes t_j = t_min * 2^(j/M) for integrals against
/// dt/t, equal weights ln2/M per node. Each node is read as the midpoint of
/// its log-interval, so the effective integration range is
/// [t_min * 2^(-1/(2M)), t_last * 2^(1/(2M))].
struct ScaleGrid {
    double t_min = 0, t_max = 0;
    int M = 8;
    std::vector<double> nodes;

    double weight() const;               // ln2 / M
    double effective_lo() const;         // t_min * 2^(-1/(2M))
    double effective_hi() const;         // nodes.back() * 2^(1/(2M))
};

ScaleGrid make_scales(const GridSpec& g, double t_min, double t_max, int M);

enum class KernelKind { phi, psi, eta, zeta };

/// Truncated kernels of the sphere/ball deviation calculus:
///   phi  = (1/(n w_n)) x/|x|^n         on |x| <= 1   (vector, odd)
///   eta  = (1/(n w_n)) x               on |x| <= 1   (vector, odd)
///   psi  = phi - eta                                  (vector, odd)
///   zeta = |x|^(eps-n) Omega(x/|x|)    on |x| <= 1   (scalar, Omega mean-zero)
/// where w_n is the unit ball volume. All scale as k_t(x) = t^(-n) k(x/t).
struct KernelSpec {
    KernelKind kind = KernelKind::phi;
    double eps = 1.0;                                                // zeta only
    std::function<double(const std::array<double, 3>&)> omega;      // zeta only
};

double unit_ball_volume(int n);
double unit_sphere_area(int n);  // n * w_n

/// Sphere average f_{S(x,t)} for all x, via the closed-form radial
/// multiplier of the normalized sphere measure (cos / J0 / sinc family).
ScalarField sphere_mean(const ScalarField& f, double t);

/// Ball average f_{B(x,t)} via the sinc / 2J1(z)/z / 3(sin z - z cos z)/z^3
/// multipliers.
ScalarField ball_mean(const ScalarField& f, double t);

/// Sampled scaled kernel on the lattice. The origin cell is assigned the
/// cell average of the kernel (0 for the odd vector kernels, local polar
/// quadrature for zeta).
VectorField sample_vector_kernel(const GridSpec& g, KernelKind kind, double t);
ScalarField sample_zeta_kernel(const GridSpec& g, const KernelSpec& spec, double t);

/// Spectrum of the sampled scaled kernel component; cached per (kind, t, grid).
const Spectrum& kernel_spectrum(const GridSpec& g, KernelKind kind, int component, double t);

/// k_t * v summed over components (phi/psi/eta against a vector field).
ScalarField kernel_convolve(const KernelSpec& spec, const VectorField& v, double t);
/// zeta_t * f (scalar kernel).
ScalarField kernel_convolve(const KernelSpec& spec, const ScalarField& f, double t);

/// Oracle path: direct truncated spatial sums over |y| <= t using the same
/// sampled kernels. O(N^n (t/h)^n); test-grade.
ScalarField kernel_convolve_direct(const KernelSpec& spec, const VectorField& v, double t);
ScalarField kernel_convolve_direct(const KernelSpec& spec, const ScalarField& f, double t);

/// Quadrature oracles with multilinear interpolation of f.
double sphere_mean_direct(const ScalarField& f, const std::array<double, 3>& x, double t,
                          int angular_nodes = 64);
double ball_mean_direct(const ScalarField& f, const std::array<double, 3>& x, double t,
                        int radial_nodes = 32, int angular_nodes = 64);

/// Integral of Omega over S^{n-1} (total measure n*w_n); admissibility gate
/// for Marcinkiewicz kernels is |value| <= 1e-8.
double omega_mean_zero(int n, const std::function<double(const std::array<double, 3>&)>& omega);

/// Periodic multilinear interpolation of f at an arbitrary point.
double interp_field(const ScalarField& f, const std::array<double, 3>& x);

}  // namespace sqfn
