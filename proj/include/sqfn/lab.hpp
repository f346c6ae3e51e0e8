#pragma once

#include <map>
#include <optional>
#include <string>

#include "sqfn/averaging.hpp"
#include "sqfn/field.hpp"
#include "sqfn/squarefn.hpp"
#include "sqfn/weights.hpp"

namespace sqfn {

/// One named check: a measured value against its declared threshold.
struct CheckItem {
    std::string name;
    double value = 0;
    double threshold = 0;
    bool pass = false;
};

/// Structured result of a verification run. Every number carries the
/// parameters that produced it; thresholds are stored alongside results.
struct ExperimentReport {
    std::string experiment;
    std::map<std::string, std::string> params;
    std::vector<CheckItem> items;
    std::map<std::string, double> constants;
    bool pass = true;
    double wall_seconds = 0;

    void add(const std::string& name, double value, double threshold, bool below = true);
    std::string to_json() const;
    std::string to_csv() const;
    void write(const std::string& path, const std::string& format) const;
};

/// Smooth decaying corpus: alternating gaussians and bumps with varied
/// widths and small center offsets. Deterministic in seed.
std::vector<ScalarField> smooth_corpus(const GridSpec& g, int count, std::uint64_t seed);

/// Band-limited corpus on the ring k_lo <= |m|_inf <= k_hi.
std::vector<ScalarField> bandlimited_corpus(const GridSpec& g, int count, int k_lo, int k_hi,
                                            std::uint64_t seed);

/// Truncated-integral reference constants from the continuum symbols:
/// C^2 = integral of ((1 - m(s))/s)^2 ds/s with m the sphere (op 0) or
/// ball (op 1) mean symbol at s = 2 pi t |xi|.
double isometry_constant_symbol(int n, int op);

/// Sphere/ball representation residuals of the deviation identities at one
/// scale, relative to |grad f|_inf * t.
struct RepresentationResidual {
    double sphere = 0, ball = 0;
};
RepresentationResidual verify_representation(const ScalarField& f, double t);

/// Isometry estimates: per-field ratios |T~g|_2/|g|_2 (and S~), their
/// spread, and the independent radial-profile quadrature route.
struct IsometryEstimate {
    double c1_ratio = 0, c1_spread = 0, c1_profile = 0;
    double c2_ratio = 0, c2_spread = 0, c2_profile = 0;
    std::vector<double> t_ratios, s_ratios;
};
IsometryEstimate estimate_isometry_constants(const std::vector<ScalarField>& corpus,
                                             const ScaleGrid& scales);

/// Pointwise S <= n/(n+2) T + eps_trunc check; returns the worst violation
/// (negative slack means a violation) and the report.
ExperimentReport verify_pointwise_inequality(const ScalarField& f, const ScaleGrid& scales);

/// Integration-by-parts ledger at a probe point: relative residual of
/// w_n^2 int_eps^T |f-f_B|^2 dt/t^3 = A(t)|_eps^T + B_{eps,T}.
double verify_parts_identity(const ScalarField& f, std::size_t probe_index, double eps, double T,
                             int M = 32);

/// Polarization residual |<Kg,Kh> - C1^2 <g,h>| relative to C1^2 |g|_2 |h|_2.
double verify_polarization(const ScalarField& g, const ScalarField& h, const ScaleGrid& scales,
                           double c1 = 0);

/// Ratio tables |Tf|_p/|grad f|_p and |Sf|_p/|grad f|_p over a corpus,
/// optionally weighted.
ExperimentReport norm_equivalence_sweep(const std::vector<ScalarField>& corpus,
                                        const std::vector<double>& p_list,
                                        const std::optional<WeightSpec>& weight,
                                        const ScaleGrid& scales);

/// K(f_eps) <= (Kf) * phi_eps + slack for K in {T, S}.
ExperimentReport verify_mollifier_domination(const ScalarField& f,
                                             const std::vector<double>& eps_list,
                                             const ScaleGrid& scales);

/// Named suite drivers used by the CLI; each builds its default corpus and
/// scale window on the given grid.
ExperimentReport run_suite(const std::string& suite, int dim, int N, double L,
                           std::uint64_t seed);

}  // namespace sqfn
