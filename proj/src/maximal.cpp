#include "sqfn/maximal.hpp"

#include <cmath>

#include "sqfn/parallel.hpp"
#include "sqfn/spectral.hpp"

namespace sqfn {

namespace {

ScalarField node_max(const GridSpec& g, const ScaleGrid& scales,
                     const std::function<ScalarField(double)>& node_value) {
    std::vector<ScalarField> per_node(scales.nodes.size(), ScalarField(g));
    parallel_for(scales.nodes.size(),
                 [&](std::size_t j) { per_node[j] = node_value(scales.nodes[j]); });
    ScalarField out(g);
    for (const auto& v : per_node)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], v[i]);
    return out;
}

}  // namespace

ScalarField hl_maximal(const ScalarField& f, const ScaleGrid& scales) {
    ScalarField absf(f.grid);
    for (std::size_t i = 0; i < f.size(); ++i) absf[i] = std::abs(f[i]);
    return node_max(f.grid, scales, [&](double t) { return ball_mean(absf, t); });
}

ScalarField spherical_maximal(const ScalarField& f, const ScaleGrid& scales) {
    return node_max(f.grid, scales, [&](double t) {
        ScalarField v = sphere_mean(f, t);
        for (auto& x : v.values) x = std::abs(x);
        return v;
    });
}

ScalarField maximal_representation(const ScalarField& f, const ScaleGrid& scales) {
    VectorField grad = gradient(f);
    KernelSpec eta{KernelKind::eta};
    return node_max(f.grid, scales, [&](double t) {
        ScalarField v = ball_mean(f, t);
        ScalarField corr = kernel_convolve(eta, grad, t);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(v[i] - t * corr[i]);
        return v;
    });
}

}  // namespace sqfn
