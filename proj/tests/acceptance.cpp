// Acceptance gate: one criterion per invocation (argv[1] = 1..11), one
// PASS/FAIL line per criterion, exit 0 on pass.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "sqfn/field.hpp"
#include "sqfn/lab.hpp"
#include "sqfn/maximal.hpp"
#include "sqfn/spectral.hpp"
#include "sqfn/squarefn.hpp"
#include "sqfn/weights.hpp"

using namespace sqfn;

namespace {

using Clock = std::chrono::steady_clock;

struct Gate {
    bool ok = true;
    void check(const char* name, double value, double threshold, bool below = true) {
        bool p = below ? value <= threshold : value >= threshold;
        std::printf("  %-52s %13.6e vs %9.2e  %s\n", name, value, threshold,
                    p ? "ok" : "VIOLATION");
        ok = ok && p;
    }
};

double max_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// ---- criterion 1: spectral exactness --------------------------------------

bool criterion1(Gate& gate) {
    for (int n : {1, 2}) {
        GridSpec g = make_grid(n, 256, 16.0);
        for (int trial = 0; trial < 10; ++trial) {
            ScalarField f = sample_random_bandlimited(g, n == 1 ? 64 : 24, 100 + trial, 1);
            double rt = max_diff(f, inverse_transform(transform(f)));

            Spectrum s = transform(f);
            double space = 0, freq = 0;
            for (std::size_t i = 0; i < f.size(); ++i) space += f[i] * f[i];
            space *= std::pow(g.h, g.n);
            for (auto& c : s.coeff) freq += std::norm(c);
            freq /= std::pow(g.L, g.n);
            double parseval = std::abs(space - freq) / space;

            VectorField grad = gradient(f);
            ScalarField hl = half_laplacian(f);
            double id1 = max_diff(riesz_divergence(grad), hl) / linf_norm(hl);
            VectorField back = riesz(hl);
            double id2 = 0, ref = 0;
            for (int j = 0; j < n; ++j) {
                id2 = std::max(id2, max_diff(back[j], -1.0 * grad[j]));
                ref = std::max(ref, linf_norm(grad[j]));
            }
            if (trial == 0) {
                std::string tag = "n=" + std::to_string(n);
                gate.check((tag + " round trip").c_str(), rt, 1e-12);
                gate.check((tag + " parseval").c_str(), parseval, 1e-12);
                gate.check((tag + " riesz.grad = halflap").c_str(), id1, 1e-10);
                gate.check((tag + " riesz halflap = -grad").c_str(), id2 / ref, 1e-10);
            } else if (rt > 1e-12 || parseval > 1e-12 || id1 > 1e-10 || id2 / ref > 1e-10) {
                gate.check(("n=" + std::to_string(n) + " trial " + std::to_string(trial)).c_str(),
                           std::max({rt, parseval, id1, id2 / ref}), 1e-10);
            }
        }
    }
    return gate.ok;
}

// ---- criterion 2: representation identities with refinement ----------------

bool criterion2(Gate& gate) {
    const double L = 16.0;
    double mean_res[2] = {0, 0};
    for (int pass = 0; pass < 2; ++pass) {
        int N = pass == 0 ? 256 : 512;
        GridSpec g = make_grid(2, N, L);
        auto corpus = smooth_corpus(g, 6, 20260823);
        double acc = 0;
        int cnt = 0;
        double worst = 0;
        for (const auto& f : corpus)
            for (double t : {L / 32, L / 16, L / 8}) {
                auto r = verify_representation(f, t);
                acc += r.sphere + r.ball;
                cnt += 2;
                worst = std::max({worst, r.sphere, r.ball});
            }
        mean_res[pass] = acc / cnt;
        gate.check(("N=" + std::to_string(N) + " worst residual").c_str(), worst, 1e-3);
    }
    double ratio = mean_res[1] / mean_res[0];
    std::printf("  mean residual N=256: %.3e  N=512: %.3e\n", mean_res[0], mean_res[1]);
    gate.check("refinement ratio upper (0.5 + 25%)", ratio, 0.625);
    gate.check("refinement ratio lower (0.5 - 25%)", ratio, 0.375, false);
    return gate.ok;
}

// ---- criterion 3: quadratic moments ----------------------------------------

bool criterion3(Gate& gate) {
    const double L = 16.0;
    for (int n : {1, 2, 3}) {
        GridSpec g = make_grid(n, n == 3 ? 64 : 256, L);
        ScalarField f = sample_quadratic_window(g);
        std::array<int, 3> k0{0, 0, 0};
        for (int d = 0; d < n; ++d) k0[d] = g.N / 2;
        std::size_t i0 = g.ravel(k0);
        double t = L / 16;
        double devS = sphere_mean(f, t)[i0] - f[i0];
        double devB = ball_mean(f, t)[i0] - f[i0];
        std::string tag = "n=" + std::to_string(n);
        gate.check((tag + " sphere moment vs t^2").c_str(), std::abs(devS / (t * t) - 1.0), 1e-3);
        gate.check((tag + " ball moment vs n t^2/(n+2)").c_str(),
                   std::abs(devB / (n * t * t / (n + 2)) - 1.0), 1e-3);

        // node-wise integrand ratio over a window inside the plateau
        ScaleGrid scales = make_scales(g, L / 64, L / 16, 4);
        double want = std::pow(n / double(n + 2), 2.0);
        double worst = 0;
        for (double tj : scales.nodes) {
            double s = sphere_mean(f, tj)[i0] - f[i0];
            double b = ball_mean(f, tj)[i0] - f[i0];
            worst = std::max(worst, std::abs((b * b) / (s * s) / want - 1.0));
        }
        gate.check((tag + " integrand ratio vs (n/(n+2))^2").c_str(), worst, 1e-3);
    }
    return gate.ok;
}

// ---- criterion 4: isometry of the modified square functions ----------------

bool criterion4(Gate& gate) {
    struct Cfg {
        int n, N, k_lo, k_hi;
        double L, t_min_h;
    };
    for (Cfg c : {Cfg{1, 4096, 8, 14, 32.0, 8.0}, Cfg{2, 256, 4, 6, 16.0, 8.0}}) {
        GridSpec g = make_grid(c.n, c.N, c.L);
        auto corpus = bandlimited_corpus(g, 5, c.k_lo, c.k_hi, 404);
        ScaleGrid scales = make_scales(g, c.t_min_h * g.h, c.L / 4, 8);
        auto est = estimate_isometry_constants(corpus, scales);
        std::string tag = "n=" + std::to_string(c.n);
        std::printf("  %s C1 ratio %.6f profile %.6f | C2 ratio %.6f profile %.6f\n",
                    tag.c_str(), est.c1_ratio, est.c1_profile, est.c2_ratio, est.c2_profile);
        gate.check((tag + " T-tilde spread").c_str(), est.c1_spread, 0.01);
        gate.check((tag + " S-tilde spread").c_str(), est.c2_spread, 0.01);
        gate.check((tag + " C1 route mismatch").c_str(),
                   std::abs(est.c1_ratio / est.c1_profile - 1.0), 0.02);
        gate.check((tag + " C2 route mismatch").c_str(),
                   std::abs(est.c2_ratio / est.c2_profile - 1.0), 0.02);
    }
    return gate.ok;
}

// ---- criterion 5: p = 2 norm equivalence -----------------------------------

// Truncation-aware prediction: the exact ratio ||Tf||_2/||grad f||_2 implied
// by the sphere-mean symbol and the finite scale window, computed directly
// from the field's spectrum. Printed as diagnostic context.
double predicted_ratio(const ScalarField& f, const ScaleGrid& scales, int op) {
    Spectrum s = transform(f);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < s.coeff.size(); ++i) {
        double xi = s.xi_norm(i);
        if (xi == 0) continue;
        double e = std::norm(s.coeff[i]) * (2 * M_PI * xi) * (2 * M_PI * xi);
        double cov = 0;
        for (double t : scales.nodes) {
            double z = 2 * M_PI * t * xi;
            double m;
            if (op == 0)
                m = std::cyl_bessel_j(0.0, z);
            else
                m = z < 1e-8 ? 1.0 : 2.0 * std::cyl_bessel_j(1.0, z) / z;
            double v = (1.0 - m) / z;
            cov += scales.weight() * v * v;
        }
        num += e * cov;
        den += e;
    }
    return std::sqrt(num / den);
}

bool criterion5(Gate& gate) {
    GridSpec g = make_grid(2, 256, 16.0);
    auto corpus = smooth_corpus(g, 10, 505);
    ScaleGrid scales = make_scales(g, 8 * g.h, g.L / 4, 8);
    const double c1 = isometry_constant_symbol(2, 0);
    const double c2 = isometry_constant_symbol(2, 1);
    std::printf("  symbol constants: C1 = %.6f  C2 = %.6f\n", c1, c2);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const ScalarField& f = corpus[i];
        VectorField gr = gradient(f);
        ScalarField mag(g);
        for (std::size_t k = 0; k < f.size(); ++k)
            mag[k] = std::hypot(gr[0][k], gr[1][k]);
        double base = lp_norm(mag, 2);
        double rt = lp_norm(square_T(f, scales), 2) / base;
        double rs = lp_norm(square_S(f, scales), 2) / base;
        double pt = predicted_ratio(f, scales, 0);
        double ps = predicted_ratio(f, scales, 1);
        std::printf("  field %zu: T ratio %.5f (window-symbol predicts %.5f), S ratio %.5f "
                    "(predicts %.5f)\n",
                    i, rt, pt, rs, ps);
        std::string tag = "field " + std::to_string(i);
        gate.check((tag + " |T ratio/C1 - 1|").c_str(), std::abs(rt / c1 - 1.0), 0.02);
        gate.check((tag + " |S ratio/C2 - 1|").c_str(), std::abs(rs / c2 - 1.0), 0.02);
    }
    return gate.ok;
}

// ---- criterion 6: pointwise inequality and parts identity -------------------

bool criterion6(Gate& gate) {
    for (int n : {1, 2}) {
        GridSpec g = make_grid(n, n == 1 ? 1024 : 256, 16.0);
        auto corpus = smooth_corpus(g, 4, 606);
        ScaleGrid scales = make_scales(g, 8 * g.h, g.L / 4, 8);
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            auto rep = verify_pointwise_inequality(corpus[i], scales);
            std::string tag = "n=" + std::to_string(n) + " field " + std::to_string(i);
            gate.check((tag + " worst pointwise violation").c_str(), rep.items.at(0).value,
                       1e-8);
            // diagnostic: the squared form the parts ledger actually delivers
            std::printf("    [info] %s squared-form violation %.3e\n", tag.c_str(),
                        rep.items.at(1).value);
        }
    }
    GridSpec g = make_grid(2, 256, 16.0);
    auto corpus = smooth_corpus(g, 1, 606);
    for (int k = 0; k < 5; ++k) {
        std::array<int, 3> idx{g.N / 2 + 7 * k, g.N / 2 - 5 * k, 0};
        double r = verify_parts_identity(corpus[0], g.ravel(idx), 8 * g.h, g.L / 8);
        gate.check(("parts residual, probe " + std::to_string(k)).c_str(), r, 1e-3);
    }
    return gate.ok;
}

// ---- criterion 7: 1-d consistency -------------------------------------------

bool criterion7(Gate& gate) {
    GridSpec g = make_grid(1, 4096, 32.0);
    ScaleGrid scales = make_scales(g, 8 * g.h, g.L / 4, 8);
    ScalarField f = sample_gaussian(g, 3.0);
    ScalarField t1 = square_T_1d(f, scales);
    ScalarField t = square_T(f, scales);
    gate.check("square_T_1d vs 2 square_T (rel linf)",
               max_diff(t1, 2.0 * t) / linf_norm(t1), 1e-12);
    ScalarField d = square_D_fullspace(f, scales);
    gate.check("square_D vs sqrt(2) square_T_1d (rel linf)",
               max_diff(d, std::sqrt(2.0) * t1) / linf_norm(d), 1e-3);
    return gate.ok;
}

// ---- criterion 8: mollifier domination --------------------------------------

bool criterion8(Gate& gate) {
    GridSpec g = make_grid(2, 256, 16.0);
    auto corpus = smooth_corpus(g, 3, 808);
    ScaleGrid scales = make_scales(g, 8 * g.h, g.L / 4, 8);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto rep = verify_mollifier_domination(corpus[i], {4 * g.h, 8 * g.h}, scales);
        for (const auto& it : rep.items)
            gate.check((it.name + " field " + std::to_string(i)).c_str(), it.value, 1e-8);
    }
    return gate.ok;
}

// ---- criterion 9: maximal representation ------------------------------------

bool criterion9(Gate& gate) {
    GridSpec g = make_grid(2, 256, 16.0);
    auto corpus = smooth_corpus(g, 4, 909);
    ScaleGrid scales = make_scales(g, 8 * g.h, g.L / 8, 8);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        ScalarField a = spherical_maximal(corpus[i], scales);
        ScalarField b = maximal_representation(corpus[i], scales);
        gate.check(("field " + std::to_string(i) + " max discrepancy (rel)").c_str(),
                   max_diff(a, b) / linf_norm(a), 1e-3);
    }
    return gate.ok;
}

// ---- criterion 10: weighted probes -------------------------------------------

bool criterion10(Gate& gate) {
    GridSpec g = make_grid(2, 256, 16.0);
    auto corpus = smooth_corpus(g, 6, 1010);
    ScaleGrid scales = make_scales(g, 8 * g.h, g.L / 4, 8);
    WeightSpec w{0.5};
    double lo_t = 1e300, hi_t = 0, lo_s = 1e300, hi_s = 0;
    for (const auto& f : corpus) {
        VectorField gr = gradient(f);
        ScalarField mag(g);
        for (std::size_t k = 0; k < f.size(); ++k)
            mag[k] = std::hypot(gr[0][k], gr[1][k]);
        double base = weighted_lp_norm(mag, w, 2.0);
        double rt = weighted_lp_norm(square_T(f, scales), w, 2.0) / base;
        double rs = weighted_lp_norm(square_S(f, scales), w, 2.0) / base;
        if (!std::isfinite(rt) || !std::isfinite(rs)) {
            gate.check("ratio finite", 1.0, 0.0);
            continue;
        }
        lo_t = std::min(lo_t, rt);
        hi_t = std::max(hi_t, rt);
        lo_s = std::min(lo_s, rs);
        hi_s = std::max(hi_s, rs);
    }
    std::printf("  weighted T ratios in [%.4f, %.4f], S in [%.4f, %.4f]\n", lo_t, hi_t, lo_s,
                hi_s);
    gate.check("weighted T ratio spread", hi_t / lo_t, 25.0);
    gate.check("weighted S ratio spread", hi_s / lo_s, 25.0);
    gate.check("ap_constant(alpha=0) - 1", std::abs(ap_constant(g, WeightSpec{0.0}, 2.0) - 1.0),
               0.0);
    double a1 = ap_constant(make_grid(1, 128, 8.0), WeightSpec{-2.0}, 2.0);
    double a2 = ap_constant(make_grid(1, 256, 8.0), WeightSpec{-2.0}, 2.0);
    std::printf("  alpha=-2 (n=1) A_p functional: %.4e -> %.4e under refinement\n", a1, a2);
    gate.check("alpha=-2 divergence factor", a2 / a1, 1.5, false);
    return gate.ok;
}

// ---- criterion 11: quadrature robustness --------------------------------------

// L2-squared density of the sphere deviation per unit log t; the scale
// integral is int F dlog t, so the strip of log-width ln2/32 that enters or
// leaves the covered window when M doubles contributes (ln2/32) F(edge)
double sphere_density(const ScalarField& f, double t) {
    ScalarField d = f - sphere_mean(f, t);
    double cell = std::pow(f.grid.h, f.grid.n), s = 0;
    for (double v : d.values) s += v * v;
    return s * cell / (t * t);
}

bool criterion11(Gate& gate) {
    // square-function norms from criteria 5-7 recomputed with M = 16
    {
        GridSpec g = make_grid(2, 256, 16.0);
        auto corpus = smooth_corpus(g, 10, 505);
        ScaleGrid s8 = make_scales(g, 8 * g.h, g.L / 4, 8);
        ScaleGrid s16 = make_scales(g, 8 * g.h, g.L / 4, 16);
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            double t8 = lp_norm(square_T(corpus[i], s8), 2);
            double t16 = lp_norm(square_T(corpus[i], s16), 2);
            double ss8 = lp_norm(square_S(corpus[i], s8), 2);
            double ss16 = lp_norm(square_S(corpus[i], s16), 2);
            double strip = std::log(2.0) / 32.0 *
                           (sphere_density(corpus[i], s8.nodes.front()) +
                            sphere_density(corpus[i], s8.nodes.back())) /
                           (2.0 * t8 * t8);
            std::string tag = "n=2 field " + std::to_string(i);
            std::printf("    [info] %s window-edge strip predicts T change %.3e\n",
                        tag.c_str(), strip);
            gate.check((tag + " |T|_2 change").c_str(), std::abs(t16 / t8 - 1.0), 5e-3);
            gate.check((tag + " |S|_2 change").c_str(), std::abs(ss16 / ss8 - 1.0), 5e-3);
        }
    }
    {
        GridSpec g = make_grid(1, 4096, 32.0);
        ScalarField f = sample_gaussian(g, 3.0);
        ScaleGrid s8 = make_scales(g, 8 * g.h, g.L / 4, 8);
        ScaleGrid s16 = make_scales(g, 8 * g.h, g.L / 4, 16);
        double a = lp_norm(square_T_1d(f, s8), 2), b = lp_norm(square_T_1d(f, s16), 2);
        gate.check("n=1 |T_1d|_2 change", std::abs(b / a - 1.0), 5e-3);
        double c = lp_norm(square_D_fullspace(f, s8), 2),
               d = lp_norm(square_D_fullspace(f, s16), 2);
        gate.check("n=1 |D|_2 change", std::abs(d / c - 1.0), 5e-3);
    }
    return gate.ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <criterion 1..11>\n", argv[0]);
        return 2;
    }
    int c = std::atoi(argv[1]);
    static const double budget[12] = {0, 5, 60, 30, 120, 120, 60, 30, 60, 60, 120, 600};
    Gate gate;
    auto t0 = Clock::now();
    bool ok = false;
    switch (c) {
        case 1: ok = criterion1(gate); break;
        case 2: ok = criterion2(gate); break;
        case 3: ok = criterion3(gate); break;
        case 4: ok = criterion4(gate); break;
        case 5: ok = criterion5(gate); break;
        case 6: ok = criterion6(gate); break;
        case 7: ok = criterion7(gate); break;
        case 8: ok = criterion8(gate); break;
        case 9: ok = criterion9(gate); break;
        case 10: ok = criterion10(gate); break;
        case 11: ok = criterion11(gate); break;
        default: std::fprintf(stderr, "unknown criterion %d\n", c); return 2;
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > budget[c]) {
        std::printf("  runtime %.1f s exceeds budget %.0f s\n", secs, budget[c]);
        ok = false;
    }
    std::printf("criterion %d: %s (%.1f s)\n", c, ok ? "PASS" : "FAIL", secs);
    return ok ? 0 : 1;
}
