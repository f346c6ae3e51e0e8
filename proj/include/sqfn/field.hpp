#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqfn {

/// Uniform periodic lattice on the box [-L/2, L/2)^n with N samples per axis.
/// Lattice points are x_k = -L/2 + k*h per axis, h = L/N.
struct GridSpec {
    int n = 1;          // dimension, 1..3
    int N = 16;         // samples per axis, power of two
    double L = 1.0;     // box side length
    double h = 0.0625;  // spacing L/N

    std::size_t size() const;                           // N^n
    double coord(int k) const { return -0.5 * L + k * h; }
    std::array<int, 3> unravel(std::size_t idx) const;  // lexicographic, axis 0 fastest
    std::size_t ravel(const std::array<int, 3>& k) const;
    /// Coordinates of lattice point idx (unused axes are 0).
    std::array<double, 3> point(std::size_t idx) const;

    bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int n, int N, double L);

struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g, double fill = 0.0)
        : grid(g), values(g.size(), fill) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double c);
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField a);

struct VectorField {
    std::vector<ScalarField> components;  // one per axis, shared grid

    VectorField() = default;
    explicit VectorField(const GridSpec& g) : components(g.n, ScalarField(g)) {}

    const GridSpec& grid() const { return components.at(0).grid; }
    int dim() const { return static_cast<int>(components.size()); }
    ScalarField& operator[](int j) { return components[j]; }
    const ScalarField& operator[](int j) const { return components[j]; }
};

// --- test-function corpus ------------------------------------------------

/// exp(-pi |x-c|^2 / sigma^2). Rejected unless the boundary value < 1e-12.
ScalarField sample_gaussian(const GridSpec& g, double sigma,
                            const std::array<double, 3>& center = {0, 0, 0});

/// exp(-1/(1-|x/r|^2)) for |x| < r, else 0. Requires r <= L/2.
ScalarField sample_bump(const GridSpec& g, double r);

/// cos(2*pi m.x / L) for an integer mode vector m.
ScalarField sample_plane_wave(const GridSpec& g, const std::array<int, 3>& m);

/// Real band-limited field: sum of random-amplitude cosines over integer
/// modes with k_lo <= |m|_inf <= K. Deterministic in (K, k_lo, seed).
ScalarField sample_random_bandlimited(const GridSpec& g, int K, std::uint64_t seed,
                                      int k_lo = 1);

/// |x|^2 times a C-infinity plateau window: exactly |x|^2 for |x| <= r0,
/// 0 for |x| >= r1. Defaults r0 = L/8, r1 = 3L/8.
ScalarField sample_quadratic_window(const GridSpec& g, double r0 = -1, double r1 = -1);

/// Generator dispatch by name for the CLI: "gaussian:sigma",
/// "bump:r", "plane_wave:m1[,m2[,m3]]", "random_bandlimited:K",
/// "quadratic_window".
ScalarField sample_named(const GridSpec& g, const std::string& spec, std::uint64_t seed);

// --- norms ---------------------------------------------------------------

/// Riemann-sum L^p norm (sum |f|^p h^n)^(1/p); p = infinity gives max|f|.
double lp_norm(const ScalarField& f, double p);

double linf_norm(const ScalarField& f);

}  // namespace sqfn
