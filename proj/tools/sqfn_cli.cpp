#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqfn/field.hpp"
#include "sqfn/field_io.hpp"
#include "sqfn/lab.hpp"
#include "sqfn/maximal.hpp"
#include "sqfn/parallel.hpp"
#include "sqfn/spectral.hpp"
#include "sqfn/squarefn.hpp"
#include "sqfn/weights.hpp"

namespace {

struct GridArgs {
    int dim = 2;
    int size = 64;
    double box = 16.0;
};

void add_grid_flags(CLI::App* cmd, GridArgs& a) {
    cmd->add_option("--dim", a.dim, "dimension (1..3)");
    cmd->add_option("--size", a.size, "samples per axis (power of two)");
    cmd->add_option("--box", a.box, "box side length");
}

int run_gen(const GridArgs& ga, const std::string& gen, std::uint64_t seed,
            const std::string& out) {
    sqfn::GridSpec g = sqfn::make_grid(ga.dim, ga.size, ga.box);
    sqfn::ScalarField f = sqfn::sample_named(g, gen, seed);
    sqfn::write_field_binary(f, out);
    return 0;
}

int run_apply(const std::string& op, const std::string& in, const std::string& out, double tmin,
              double tmax, int M, double eps) {
    sqfn::ScalarField f = sqfn::read_field_binary(in);
    const auto& g = f.grid;
    if (tmin <= 0) tmin = 8 * g.h;
    if (tmax <= 0) tmax = g.L / 4;

    if (op == "riesz") {
        sqfn::VectorField r = sqfn::riesz(f);
        for (int j = 0; j < g.n; ++j)
            sqfn::write_field_binary(r[j], out + ".c" + std::to_string(j));
        return 0;
    }
    if (op == "halflap") {
        sqfn::write_field_binary(sqfn::half_laplacian(f), out);
        return 0;
    }

    sqfn::ScaleGrid scales = sqfn::make_scales(g, tmin, tmax, M);
    auto sign_omega = [](const std::array<double, 3>& u) { return u[0] >= 0 ? 1.0 : -1.0; };
    sqfn::ScalarField result;
    if (op == "T") result = sqfn::square_T(f, scales);
    else if (op == "S") result = sqfn::square_S(f, scales);
    else if (op == "W") result = sqfn::square_W(f, scales);
    else if (op == "Ttilde") result = sqfn::square_T_tilde(f, scales);
    else if (op == "Stilde") result = sqfn::square_S_tilde(f, scales);
    else if (op == "muomega") result = sqfn::mu_omega(sign_omega, f, scales);
    else if (op == "sigma") result = sqfn::sato_sigma(sign_omega, eps, f, scales);
    else if (op == "sphmax") result = sqfn::spherical_maximal(f, scales);
    else if (op == "hlmax") result = sqfn::hl_maximal(f, scales);
    else throw CLI::ValidationError("--op", "unknown operator: " + op);
    sqfn::write_field_binary(result, out);
    return 0;
}

int run_verify(const std::string& suite, const GridArgs& ga, std::uint64_t seed,
               const std::string& report, const std::string& format) {
    sqfn::ExperimentReport rep = sqfn::run_suite(suite, ga.dim, ga.size, ga.box, seed);
    if (!report.empty()) rep.write(report, format);
    std::cout << rep.experiment << ": " << (rep.pass ? "pass" : "FAIL") << " ("
              << rep.items.size() << " checks, " << rep.wall_seconds << " s)\n";
    return rep.pass ? 0 : 1;
}

int run_sweep(const GridArgs& ga, std::uint64_t seed, const std::vector<double>& p_list,
              const std::string& alpha, int corpus_size, const std::string& report,
              const std::string& format) {
    sqfn::GridSpec g = sqfn::make_grid(ga.dim, ga.size, ga.box);
    auto corpus = sqfn::smooth_corpus(g, corpus_size, seed);
    sqfn::ScaleGrid scales = sqfn::make_scales(g, 8 * g.h, g.L / 4, 8);
    std::optional<sqfn::WeightSpec> w;
    if (alpha != "none") w = sqfn::WeightSpec{std::stod(alpha)};
    sqfn::ExperimentReport rep = sqfn::norm_equivalence_sweep(corpus, p_list, w, scales);
    if (!report.empty()) rep.write(report, format);
    std::cout << rep.experiment << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"square-function laboratory for Sobolev norm experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value file; flags override its entries");

    int threads = 0;
    // accepted both before and after the subcommand name
    app.add_option("--threads", threads, "worker thread cap (1 = deterministic sequential)");
    app.fallthrough();

    GridArgs gen_grid, ver_grid, sw_grid;
    std::string gen_spec = "gaussian:1.0", gen_out = "field.bin";
    std::uint64_t gen_seed = 1;
    auto* gen = app.add_subcommand("gen", "generate a field and write it in binary form");
    add_grid_flags(gen, gen_grid);
    gen->add_option("--gen", gen_spec, "generator name:params");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--out", gen_out, "output field path")->required();

    std::string ap_op, ap_in, ap_out;
    double ap_tmin = 0, ap_tmax = 0, ap_p = 2, ap_alpha = 0, ap_eps = 0.5;
    int ap_M = 8;
    auto* ap = app.add_subcommand("apply", "apply an operator to a stored field");
    ap->add_option("--op", ap_op,
                   "T,S,W,Ttilde,Stilde,muomega,sigma,riesz,halflap,sphmax,hlmax")
        ->required();
    ap->add_option("--in", ap_in, "input field path")->required();
    ap->add_option("--out", ap_out, "output field path")->required();
    ap->add_option("--tmin", ap_tmin, "smallest scale (default 8h)");
    ap->add_option("--tmax", ap_tmax, "largest scale (default L/4)");
    ap->add_option("--scales-per-octave", ap_M, "quadrature nodes per octave");
    ap->add_option("--p", ap_p, "exponent (reserved for norm output)");
    ap->add_option("--alpha", ap_alpha, "weight exponent (reserved)");
    ap->add_option("--eps", ap_eps, "sigma kernel exponent");

    std::string ver_suite, ver_report, ver_format = "json";
    std::uint64_t ver_seed = 1;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", ver_suite,
                    "representation,isometry,pointwise,parts,polarization,mollifier,maximal")
        ->required();
    add_grid_flags(ver, ver_grid);
    ver->add_option("--seed", ver_seed, "corpus seed");
    ver->add_option("--report", ver_report, "report output path");
    ver->add_option("--format", ver_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string sw_suite = "equivalence", sw_alpha = "none", sw_report, sw_format = "json";
    std::vector<double> sw_plist{1.5, 2.0, 3.0};
    int sw_corpus = 10;
    std::uint64_t sw_seed = 1;
    auto* sw = app.add_subcommand("sweep", "norm-equivalence ratio sweep");
    sw->add_option("--suite", sw_suite)->check(CLI::IsMember({"equivalence"}));
    add_grid_flags(sw, sw_grid);
    sw->add_option("--p-list", sw_plist, "exponents")->delimiter(',');
    sw->add_option("--alpha", sw_alpha, "power weight exponent or 'none'");
    sw->add_option("--corpus-size", sw_corpus, "number of corpus fields");
    sw->add_option("--seed", sw_seed, "corpus seed");
    sw->add_option("--report", sw_report, "report output path");
    sw->add_option("--format", sw_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    if (threads > 0) sqfn::set_thread_count(threads);

    try {
        if (gen->parsed()) return run_gen(gen_grid, gen_spec, gen_seed, gen_out);
        if (ap->parsed())
            return run_apply(ap_op, ap_in, ap_out, ap_tmin, ap_tmax, ap_M, ap_eps);
        if (ver->parsed()) return run_verify(ver_suite, ver_grid, ver_seed, ver_report, ver_format);
        if (sw->parsed())
            return run_sweep(sw_grid, sw_seed, sw_plist, sw_alpha, sw_corpus, sw_report,
                             sw_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
