#include "sqfn/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sqfn {

double WeightSpec::operator()(const std::array<double, 3>& x, int n, double h) const {
    double r2 = 0;
    for (int d = 0; d < n; ++d) r2 += x[d] * x[d];
    return std::pow(std::max(std::sqrt(r2), h / 2), alpha);
}

bool WeightSpec::admissible(int n, double p) const {
    return alpha > -n && alpha < n * (p - 1);
}

ScalarField weight_field(const GridSpec& g, const WeightSpec& w) {
    ScalarField out(g);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = w(g.point(i), g.n, g.h);
    return out;
}

double ap_constant(const GridSpec& g, const WeightSpec& w, double p, int center_divisions) {
    if (!(p > 1)) throw std::invalid_argument("ap_constant: p must be > 1");
    ScalarField wf = weight_field(g, w);
    ScalarField wdual(g);
    const double dual_exp = -1.0 / (p - 1);
    for (std::size_t i = 0; i < wf.size(); ++i) wdual[i] = std::pow(wf[i], dual_exp);

    std::vector<double> radii;
    for (double r = 2 * g.h; r <= g.L / 4 * (1 + 1e-12); r *= 2) radii.push_back(r);

    int stride = std::max(1, g.N / center_divisions);
    double best = 0;
    std::array<int, 3> c{0, 0, 0};
    std::array<int, 3> cmax{g.N, g.n > 1 ? g.N : 1, g.n > 2 ? g.N : 1};
    for (c[2] = 0; c[2] < cmax[2]; c[2] += stride)
        for (c[1] = 0; c[1] < cmax[1]; c[1] += stride)
            for (c[0] = 0; c[0] < cmax[0]; c[0] += stride) {
                auto xc = std::array<double, 3>{g.coord(c[0]), g.n > 1 ? g.coord(c[1]) : 0,
                                                g.n > 2 ? g.coord(c[2]) : 0};
                for (double r : radii) {
                    // average over lattice points inside the ball (non-periodic:
                    // the ball must fit in the box)
                    bool fits = true;
                    for (int d = 0; d < g.n; ++d)
                        if (std::abs(xc[d]) + r > g.L / 2) fits = false;
                    if (!fits) continue;
                    double sw = 0, sd = 0;
                    std::size_t cnt = 0;
                    int span = static_cast<int>(std::ceil(r / g.h)) + 1;
                    std::array<int, 3> k{0, 0, 0};
                    std::array<int, 3> lo, hi;
                    for (int d = 0; d < 3; ++d) {
                        lo[d] = d < g.n ? c[d] - span : 0;
                        hi[d] = d < g.n ? c[d] + span : 0;
                    }
                    for (k[2] = lo[2]; k[2] <= hi[2]; ++k[2])
                        for (k[1] = lo[1]; k[1] <= hi[1]; ++k[1])
                            for (k[0] = lo[0]; k[0] <= hi[0]; ++k[0]) {
                                double d2 = 0;
                                for (int d = 0; d < g.n; ++d) {
                                    double dx = g.coord(k[d]) - xc[d];
                                    d2 += dx * dx;
                                }
                                if (d2 > r * r) continue;
                                std::size_t idx = g.ravel(k);
                                sw += wf[idx];
                                sd += wdual[idx];
                                ++cnt;
                            }
                    if (cnt == 0) continue;
                    double val = (sw / cnt) * std::pow(sd / cnt, p - 1);
                    best = std::max(best, val);
                }
            }
    return best;
}

double weighted_lp_norm(const ScalarField& f, const WeightSpec& w, double p) {
    if (!(p >= 1)) throw std::invalid_argument("weighted_lp_norm: p must be >= 1");
    const auto& g = f.grid;
    const double cell = std::pow(g.h, g.n);
    double s = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += std::pow(std::abs(f[i]), p) * w(g.point(i), g.n, g.h);
    return std::pow(s * cell, 1.0 / p);
}

WeightSpec dual_weight(const WeightSpec& w, double p) {
    if (!(p > 1)) throw std::invalid_argument("dual_weight: p must be > 1");
    double q = p / (p - 1);
    return WeightSpec{-w.alpha * q / p};
}

}  // namespace sqfn
