#pragma once

#include "sqfn/averaging.hpp"
#include "sqfn/field.hpp"

namespace sqfn {

/// Hardy-Littlewood maximal function restricted to the scale nodes:
/// max_j ball_mean(|f|, t_j).
ScalarField hl_maximal(const ScalarField& f, const ScaleGrid& scales);

/// Spherical maximal function: max_j |sphere_mean(f, t_j)|.
ScalarField spherical_maximal(const ScalarField& f, const ScaleGrid& scales);

/// Spherical maximal function through ball averages:
/// max_j |ball_mean(f, t_j) - t_j * (eta_{t_j} * grad f)|; the second term is
/// the ball average of (1/n) grad f(y).(x-y). Agrees with spherical_maximal
/// node-wise for smooth fields.
ScalarField maximal_representation(const ScalarField& f, const ScaleGrid& scales);

}  // namespace sqfn
