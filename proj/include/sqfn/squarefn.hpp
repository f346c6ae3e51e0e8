#pragma once

#include "sqfn/averaging.hpp"
#include "sqfn/field.hpp"

namespace sqfn {

/// Scale family g_{t_j}: one field per quadrature node of a ScaleGrid.
struct ScaleFamily {
    ScaleGrid scales;
    std::vector<ScalarField> fields;
};

/// Builds a family by evaluating fn at every node (node-parallel).
ScaleFamily make_family(const ScaleGrid& scales, const GridSpec& g,
                        const std::function<ScalarField(double t)>& fn);

/// Discrete (integral of |g_t|^2 dt/t)^(1/2): pointwise
/// sqrt(sum_j w g_j^2), w = ln2/M.
ScalarField scale_integrate(const ScaleFamily& fam);

// All dt/t^3 operators fold one power of 1/t into the family so a single
// dt/t quadrature serves everything.

/// T via sphere means: g_t = (f - f_{S(.,t)})/t.
ScalarField square_T(const ScalarField& f, const ScaleGrid& scales);
ScaleFamily family_T(const ScalarField& f, const ScaleGrid& scales);

/// T via the gradient representation: g_t = phi_t * grad f.
ScalarField square_T_gradient_path(const ScalarField& f, const ScaleGrid& scales);

/// S via ball means: g_t = (f - f_{B(.,t)})/t.
ScalarField square_S(const ScalarField& f, const ScaleGrid& scales);
ScaleFamily family_S(const ScalarField& f, const ScaleGrid& scales);

/// S via the gradient representation: g_t = psi_t * grad f.
ScalarField square_S_gradient_path(const ScalarField& f, const ScaleGrid& scales);

/// W: g_t = eta_t * grad f.
ScalarField square_W(const ScalarField& f, const ScaleGrid& scales);

/// Modified square functions acting through the Riesz transform:
/// g_t = phi_t * Rg (resp. psi_t * Rg).
ScalarField square_T_tilde(const ScalarField& g, const ScaleGrid& scales);
ScalarField square_S_tilde(const ScalarField& g, const ScaleGrid& scales);
ScaleFamily family_T_tilde(const ScalarField& g, const ScaleGrid& scales);

/// Marcinkiewicz integral with kernel Omega(y')/|y|^(n-1) truncated at t.
/// Requires Omega mean-zero (gate 1e-8).
ScalarField mu_omega(const std::function<double(const std::array<double, 3>&)>& omega,
                     const ScalarField& f, const ScaleGrid& scales);

/// Sato square function with kernel |x|^(eps-n) Omega(x') on |x| <= 1.
ScalarField sato_sigma(const std::function<double(const std::array<double, 3>&)>& omega,
                       double eps, const ScalarField& f, const ScaleGrid& scales);

/// Classical 1-d second-difference form: g_t = (f(x+t)+f(x-t)-2f(x))/t.
/// Equals 2*square_T node-wise. n = 1 only.
ScalarField square_T_1d(const ScalarField& f, const ScaleGrid& scales);

/// Full-space second-difference square function
/// (integral over R^n of |f(x+y)+f(x-y)-2f(x)|^2 / |y|^(n+2) dy)^(1/2),
/// by sphere quadrature at the scale nodes. In n = 1 equals
/// sqrt(2) * square_T_1d.
ScalarField square_D_fullspace(const ScalarField& f, const ScaleGrid& scales,
                               int angular_nodes = 32);

}  // namespace sqfn
