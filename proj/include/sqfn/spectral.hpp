#pragma once

#include <complex>
#include <functional>

#include "sqfn/field.hpp"

namespace sqfn {

/// Complex coefficients on the dual lattice xi in (1/L)*{-N/2,...,N/2-1}^n,
/// stored in DFT index order (index m per axis maps to m for m < N/2 and
/// m - N otherwise). Values follow the continuum convention
/// fhat(xi) = integral of exp(-2*pi*i x.xi) f(x) dx, realized as h^n times
/// the phase-corrected DFT, so multiplier formulas stated for the continuum
/// transform apply verbatim.
struct Spectrum {
    GridSpec grid;
    std::vector<std::complex<double>> coeff;

    Spectrum() = default;
    explicit Spectrum(const GridSpec& g) : grid(g), coeff(g.size()) {}

    /// Signed integer frequency of DFT index m along one axis.
    int signed_index(int m) const { return m < grid.N / 2 ? m : m - grid.N; }
    /// Dual lattice point of flat index idx (unused axes are 0).
    std::array<double, 3> xi(std::size_t idx) const;
    /// |xi| of flat index idx.
    double xi_norm(std::size_t idx) const;
    /// Flat index of the negated dual point (-m mod N per axis).
    std::size_t negated(std::size_t idx) const;
};

Spectrum transform(const ScalarField& f);
/// Real part of the inverse transform. Exact round trip with transform.
ScalarField inverse_transform(const Spectrum& s);

using Multiplier = std::function<std::complex<double>(const std::array<double, 3>& xi)>;

/// Pointwise spectral multiplication. When a real result is requested
/// (always, here) the multiplier must satisfy m(-xi) = conj(m(xi)) on the
/// discrete dual lattice; violations are rejected.
ScalarField apply_multiplier(const ScalarField& f, const Multiplier& m);

/// Convolution with a sampled kernel given by its spectrum (both real
/// fields, so the product spectrum keeps conjugate symmetry).
ScalarField convolve_spectrum(const ScalarField& f, const Spectrum& kernel);

/// Riesz transform, component j has multiplier -i xi_j/|xi|. The xi = 0
/// coefficient is set to 0; Nyquist planes are zeroed (odd multipliers have
/// no conjugate-symmetric extension there).
VectorField riesz(const ScalarField& g);

/// Sum_j R_j g_j (used for the identity R.grad f = (-Laplace)^(1/2) f).
ScalarField riesz_divergence(const VectorField& g);

/// Multiplier 2*pi*|xi|, 0 at xi = 0.
ScalarField half_laplacian(const ScalarField& f);

/// Spectral gradient, multiplier 2*pi*i*xi_j (Nyquist planes zeroed).
VectorField gradient(const ScalarField& f);

/// Convolution with a compactly supported nonnegative bump of width eps,
/// renormalized so the discrete mass h^n * sum equals 1 exactly.
/// Requires eps >= 2h.
ScalarField mollify(const ScalarField& f, double eps);

/// Radial Fourier profile of an odd vector kernel: the h in the structure
/// khat(xi) = i xi/|xi| h(|xi|), binned radially with width 1/L.
struct RadialProfile {
    std::vector<double> k;       // bin centers m/L
    std::vector<double> h;       // bin-averaged profile values
    double rho = 0;              // max transverse/anti-Hermitian residual, relative to max|h|
    double max_abs_h() const;
    /// Linear interpolation of h at radial frequency s (0 outside range).
    double interp(double s) const;
};

RadialProfile radial_profile(const VectorField& kernel);

}  // namespace sqfn
