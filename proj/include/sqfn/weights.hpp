#pragma once

#include "sqfn/field.hpp"

namespace sqfn {

/// Muckenhoupt power weight w(x) = max(|x|, h/2)^alpha; the half-cell floor
/// regularizes the lattice origin. Admissible for A_p when
/// -n < alpha < n(p-1).
struct WeightSpec {
    double alpha = 0;

    double operator()(const std::array<double, 3>& x, int n, double h) const;
    bool admissible(int n, double p) const;
};

/// Weight evaluated on every lattice point.
ScalarField weight_field(const GridSpec& g, const WeightSpec& w);

/// Brute-force A_p functional sup_B (avg_B w)(avg_B w^(-1/(p-1)))^(p-1)
/// over lattice-centered balls with radii {2h, 4h, ..., L/4} and centers on
/// a coarse sublattice of stride N/center_divisions.
double ap_constant(const GridSpec& g, const WeightSpec& w, double p, int center_divisions = 8);

/// (sum |f|^p w h^n)^(1/p).
double weighted_lp_norm(const ScalarField& f, const WeightSpec& w, double p);

/// Dual weight exponent alpha' = -alpha q/p, q = p/(p-1).
WeightSpec dual_weight(const WeightSpec& w, double p);

}  // namespace sqfn
