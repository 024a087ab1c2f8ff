// Command-line front end: point-set generation, quality metrics, rate
// experiments, greedy cubature, and universal-discretization checks.
//
// Exit codes: 0 ok, 1 numeric/precondition failure, 2 usage error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qmc/cubature.hpp"
#include "qmc/discrepancy.hpp"
#include "qmc/dispersion.hpp"
#include "qmc/experiments.hpp"
#include "qmc/frolov.hpp"
#include "qmc/greedy.hpp"
#include "qmc/point_set.hpp"
#include "qmc/pointgen.hpp"
#include "qmc/report.hpp"
#include "qmc/smooth_search.hpp"
#include "qmc/universal.hpp"

namespace {

using qmc::format_double;
using qmc::json;

struct GenArgs {
    std::string family;
    std::string output;
    int n = 10;
    int d = 2;
    double a = 8.0;
    long m = 100;
    int k = 4;
    int level = 6;  // corput
    std::optional<std::uint64_t> seed;
    bool periodized = false;
};

int run_gen(const GenArgs& g) {
    qmc::PointSet ps;
    if (g.family == "fibonacci") {
        ps = qmc::fibonacci_set(g.n);
    } else if (g.family == "frolov") {
        const auto& basis = qmc::frolov_basis_cached(g.d);
        ps = g.periodized ? qmc::frolov_periodized(basis, g.a).wrapped
                          : qmc::frolov_points(basis, g.a);
    } else if (g.family == "corput") {
        ps = qmc::corput_net(g.level);
    } else if (g.family == "halton") {
        ps = qmc::halton_set(static_cast<std::size_t>(g.m), g.d);
    } else if (g.family == "grid") {
        ps = qmc::regular_grid(g.k, g.d);
    } else if (g.family == "random") {
        if (!g.seed) {
            std::cerr << "gen random: --seed is required\n";
            return 2;
        }
        ps = qmc::random_uniform(static_cast<std::size_t>(g.m), g.d, *g.seed);
    } else {
        std::cerr << "unknown family: " << g.family << "\n";
        return 2;
    }
    qmc::write_point_set(g.output, ps);
    std::cout << ps.size() << " points, dim=" << ps.dim()
              << ", provenance=" << ps.provenance() << " -> " << g.output << "\n";
    return 0;
}

struct MetricArgs {
    std::string name;
    std::string input;
    std::string report;
    int r = 2;
    double q = 2.0;
    long samples = 100000;
    double volume = 0.25;
    double p1 = std::numeric_limits<double>::infinity();
    double p2 = std::numeric_limits<double>::infinity();
    int zgrid = 8;
    int ugrid = 6;
    std::optional<long> kmax;
    double tol = 1e-4;
    long budget = 10000000;
    std::optional<std::uint64_t> seed;
};

int run_metric(const MetricArgs& a) {
    const qmc::PointSet ps = qmc::read_point_set(a.input);
    qmc::ReportWriter report;
    if (!a.report.empty()) report.open(a.report, true);
    const json params_base{{"input", a.input}, {"provenance", ps.provenance()},
                           {"m", ps.size()},  {"d", ps.dim()}};

    auto need_seed = [&]() -> std::uint64_t {
        if (!a.seed) throw qmc::invalid_parameter("this metric requires --seed");
        return *a.seed;
    };

    if (a.name == "star") {
        const auto est = qmc::star_discrepancy_exact(ps, static_cast<std::uint64_t>(a.budget));
        std::cout << "star = " << format_double(est.value)
                  << (est.exact ? " (exact)" : " (sampled lower bound)") << "\n";
        json p = params_base;
        report.metric_row("star", p, est.value, est.exact, qmc::box_json(est.witness),
                          est.search_budget);
    } else if (a.name == "l2star") {
        const double v = qmc::l2_star_discrepancy(ps);
        std::cout << "l2star = " << format_double(v) << "\n";
        report.metric_row("l2star", params_base, v, true);
    } else if (a.name == "lq") {
        const auto mc = qmc::lq_discrepancy_mc(ps, a.q, static_cast<std::size_t>(a.samples),
                                               need_seed());
        std::cout << "lq(q=" << format_double(a.q) << ") = " << format_double(mc.value)
                  << " +- " << format_double(mc.value_se) << "\n";
        json p = params_base;
        p["q"] = a.q;
        p["samples"] = a.samples;
        report.metric_row("lq", p, mc.value, false, nullptr,
                          static_cast<std::uint64_t>(a.samples), mc.seed);
    } else if (a.name == "smooth") {
        qmc::SmoothSearchOptions opts;
        opts.multistart = static_cast<int>(std::min<long>(a.budget, 1 << 14));
        const auto est = qmc::smooth_discrepancy(ps, a.r, opts);
        std::cout << "smooth(r=" << a.r << ") = " << format_double(est.value)
                  << " (lower bound)\n";
        json p = params_base;
        p["r"] = a.r;
        report.metric_row("smooth", p, est.value, false, qmc::box_json(est.witness),
                          est.search_budget);
    } else if (a.name == "smooth-opt") {
        const auto res = qmc::optimized_smooth_discrepancy(ps, a.r);
        std::cout << "smooth-opt(r=" << a.r << ") = " << format_double(res.value) << " over "
                  << res.boxes.size() << " boxes, " << res.rounds << " rounds\n";
        json p = params_base;
        p["r"] = a.r;
        p["boxes"] = res.boxes.size();
        p["rounds"] = res.rounds;
        report.metric_row("smooth-opt", p, res.value, false);
    } else if (a.name == "fixedvol") {
        qmc::SmoothSearchOptions opts;
        opts.multistart = static_cast<int>(std::min<long>(a.budget, 1 << 14));
        const auto est = qmc::fixed_volume_discrepancy(ps, a.r, a.volume, opts);
        std::cout << "fixedvol(r=" << a.r << ", V=" << format_double(a.volume)
                  << ") = " << format_double(est.value) << " (lower bound)\n";
        json p = params_base;
        p["r"] = a.r;
        p["V"] = a.volume;
        report.metric_row("fixedvol", p, est.value, false, qmc::box_json(est.witness),
                          est.search_budget);
    } else if (a.name == "periodic") {
        const qmc::CubatureRule rule = qmc::equal_weight_rule(ps);
        const double v = qmc::periodic_smooth_discrepancy(rule, a.r, a.p1, a.p2,
                                                          a.zgrid, a.ugrid);
        std::cout << "periodic(r=" << a.r << ") = " << format_double(v)
                  << " (grid estimate)\n";
        json p = params_base;
        p["r"] = a.r;
        p["p1"] = std::isinf(a.p1) ? json("inf") : json(a.p1);
        p["p2"] = std::isinf(a.p2) ? json("inf") : json(a.p2);
        p["zgrid"] = a.zgrid;
        p["ugrid"] = a.ugrid;
        report.metric_row("periodic", p, v, false);
    } else if (a.name == "rdisc2") {
        const double v = qmc::r_discrepancy_l2(ps, a.r);
        std::cout << "rdisc2(r=" << a.r << ") = " << format_double(v) << "\n";
        json p = params_base;
        p["r"] = a.r;
        report.metric_row("rdisc2", p, v, true);
    } else if (a.name == "dispersion") {
        const auto res = ps.dim() == 2 ? qmc::dispersion_2d(ps) : qmc::dispersion_nd(ps);
        std::cout << "dispersion = " << format_double(res.value)
                  << "  (n*disp = " << format_double(res.value * ps.size()) << ")\n";
        json p = params_base;
        report.metric_row("dispersion", p, res.value,
                          res.method != qmc::DispersionResult::Method::sampled,
                          qmc::box_json(res.witness));
    } else if (a.name == "wce" || a.name == "diaphony") {
        const double r = a.name == "diaphony" ? 1.0 : static_cast<double>(a.r);
        qmc::WceOptions opts;
        opts.tol = a.tol;
        if (a.kmax) opts.kmax = *a.kmax;
        const auto w = qmc::worst_case_error_w2r(qmc::equal_weight_rule(ps), r, opts);
        std::cout << a.name << "(r=" << format_double(r) << ") = " << format_double(w.value)
                  << "\n";
        if (w.closed_form)
            std::cout << "tail: none (closed form)\n";
        else
            std::cout << "tail: kmax=" << w.kmax << " bound=" << format_double(w.tail_bound)
                      << (w.tail_dominated ? " (tail-dominated)" : "") << "\n";
        json p = params_base;
        p["r"] = r;
        p["kmax"] = w.kmax;
        p["tail_bound"] = w.tail_bound;
        report.metric_row(a.name, p, w.value, w.closed_form);
    } else {
        std::cerr << "unknown metric: " << a.name << "\n";
        return 2;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// experiment configs

struct CsvWriter {
    std::ofstream out;
    explicit CsvWriter(const std::string& path) {
        if (path.empty()) return;
        out.open(path, std::ios::trunc);
        if (!out) throw qmc::invalid_parameter("cannot open csv: " + path);
        out << "family,size,metric,value,slope\n";
    }
    void row(const std::string& family, const std::string& size, const std::string& metric,
             const std::string& value, const std::string& slope) {
        if (out.is_open()) out << family << "," << size << "," << metric << "," << value
                               << "," << slope << "\n";
    }
};

int run_experiment_config(const qmc::ExperimentConfig& cfg) {
    qmc::ReportWriter report;
    if (!cfg.output.empty()) report.open(cfg.output, false);
    CsvWriter csv(cfg.csv);
    bool failed = false;

    if (cfg.kind == "rate" || cfg.kind == "dispersion") {
        std::vector<double> xs, ys;
        std::vector<std::uint64_t> seeds = cfg.seeds;
        if (seeds.empty()) seeds.push_back(1);
        for (long size : cfg.sizes) {
            try {
                double value = 0.0, card = 0.0;
                if (cfg.kind == "rate") {
                    double logsum = 0.0;
                    for (auto seed : seeds) {
                        const auto rule = qmc::make_family_rule(cfg.family, size, cfg.d, seed);
                        qmc::WceOptions wopts;
                        wopts.tol = cfg.tol;
                        logsum += std::log(qmc::worst_case_error_w2r(rule, cfg.r, wopts).value);
                        card = static_cast<double>(rule.size());
                    }
                    value = std::exp(logsum / static_cast<double>(seeds.size()));
                    report.row(json{{"metric", "wce"},
                                    {"family", cfg.family},
                                    {"size", size},
                                    {"cardinality", card},
                                    {"r", cfg.r},
                                    {"seeds", seeds},
                                    {"value", value}});
                    csv.row(cfg.family, std::to_string(size), "wce", format_double(value), "");
                } else {
                    const auto ps = qmc::make_family_set(cfg.family, size, cfg.d, seeds[0]);
                    const auto res =
                        ps.dim() == 2 ? qmc::dispersion_2d(ps) : qmc::dispersion_nd(ps);
                    card = static_cast<double>(ps.size());
                    value = res.value;
                    report.row(json{{"metric", "dispersion"},
                                    {"family", cfg.family},
                                    {"size", size},
                                    {"cardinality", card},
                                    {"value", value},
                                    {"product", value * card}});
                    csv.row(cfg.family, std::to_string(size), "dispersion",
                            format_double(value), "");
                }
                xs.push_back(card);
                ys.push_back(value);
            } catch (const std::exception& e) {
                failed = true;
                report.row(json{{"error", e.what()}, {"family", cfg.family}, {"size", size}});
                csv.row(cfg.family, std::to_string(size), "error", "", "");
            }
        }
        if (xs.size() >= 2) {
            const qmc::LineFit fit = qmc::fit_loglog(xs, ys);
            report.row(json{{"metric", cfg.kind == "rate" ? "wce_slope" : "dispersion_slope"},
                            {"family", cfg.family},
                            {"slope", fit.slope}});
            csv.row(cfg.family, "", cfg.kind == "rate" ? "wce_slope" : "dispersion_slope", "",
                    format_double(fit.slope));
            std::cout << "slope = " << format_double(fit.slope) << "\n";
        }
    } else if (cfg.kind == "universality") {
        const long size = cfg.sizes.empty() ? 8 : cfg.sizes[0];
        const std::uint64_t seed = cfg.seeds.empty() ? 1 : cfg.seeds[0];
        const auto ps = qmc::make_family_set(cfg.family, size, cfg.d, seed);
        std::vector<int> cscan = cfg.cscan;
        if (cscan.empty()) cscan = {2, 3, 4};
        const auto rows = qmc::universality_vs_dispersion(ps, cscan, cfg.trials, seed);
        for (const auto& row : rows) {
            report.row(json{{"metric", "c1_hat"},
                            {"family", cfg.family},
                            {"size", size},
                            {"c", row.c},
                            {"n", row.n},
                            {"value", row.c1_hat},
                            {"disp_scaled", row.disp_scaled},
                            {"witness_s", row.witness_s},
                            {"witness_trial", row.witness_trial},
                            {"trials", cfg.trials},
                            {"seed", seed}});
            csv.row(cfg.family, std::to_string(row.c), "c1_hat", format_double(row.c1_hat),
                    "");
            std::cout << "c=" << row.c << " n=" << row.n
                      << " c1_hat=" << format_double(row.c1_hat)
                      << " disp*2^n=" << format_double(row.disp_scaled) << "\n";
        }
    } else if (cfg.kind == "greedy") {
        const qmc::DiscretizedSpace space = qmc::tensor_rectangle_space(1, 256, cfg.p);
        const qmc::PointSet cands = qmc::halton_set(1024, 1);
        auto kernel = [](std::span<const double> x, std::span<const double> y) {
            return (1.0 + std::cos(2.0 * qmc::pi * (x[0] - y[0]))) / std::sqrt(1.5);
        };
        const auto res = qmc::greedy_cubature(kernel, cands, space, cfg.steps, cfg.beta);
        std::vector<double> xs, ys;
        for (int n = 1; n <= cfg.steps; ++n) {
            report.row(json{{"n", n},
                            {"index", res.trace.selected[n - 1]},
                            {"residual", res.trace.residual_norms[n - 1]},
                            {"eps", res.trace.epsilons[n - 1]}});
            if (n >= 8 && res.trace.residual_norms[n - 1] > 0) {
                xs.push_back(n);
                ys.push_back(res.trace.residual_norms[n - 1]);
            }
            if ((n & (n - 1)) == 0)
                csv.row("greedy", std::to_string(n), "residual",
                        format_double(res.trace.residual_norms[n - 1]), "");
        }
        if (xs.size() >= 2) {
            const qmc::LineFit fit = qmc::fit_loglog(xs, ys);
            csv.row("greedy", "", "residual_slope", "", format_double(fit.slope));
            std::cout << "discrepancy = " << format_double(res.discrepancy)
                      << ", slope = " << format_double(fit.slope) << "\n";
        }
    } else {
        throw qmc::invalid_parameter("unknown experiment kind: " + cfg.kind);
    }
    return failed ? 1 : 0;
}

struct GreedyArgs {
    std::string kernel = "cos";
    int steps = 64;
    double p = 2.0;
    double beta = 1.0;
    int candidates = 1024;
    int grid = 256;
    std::string trace;
    std::string report;
};

int run_greedy(const GreedyArgs& g) {
    const qmc::DiscretizedSpace space = qmc::tensor_rectangle_space(1, g.grid, g.p);
    const qmc::PointSet cands = qmc::halton_set(static_cast<std::size_t>(g.candidates), 1);

    auto cos_kernel = [](std::span<const double> x, std::span<const double> y) {
        return (1.0 + std::cos(2.0 * qmc::pi * (x[0] - y[0]))) / std::sqrt(1.5);
    };
    auto box_kernel = [](std::span<const double> x, std::span<const double> y) {
        double t = x[0] - y[0];
        t -= std::floor(t);
        return (t < 0.25 || (t >= 0.5 && t < 0.6)) ? 1.0 : 0.0;
    };

    qmc::GreedyCubatureResult res;
    if (g.kernel == "cos")
        res = qmc::greedy_cubature(cos_kernel, cands, space, g.steps, g.beta);
    else if (g.kernel == "box")
        res = qmc::greedy_cubature(box_kernel, cands, space, g.steps, g.beta);
    else {
        std::cerr << "unknown kernel: " << g.kernel << " (use cos or box)\n";
        return 2;
    }

    if (!g.trace.empty()) {
        qmc::ReportWriter tw(g.trace, false);
        for (std::size_t n = 0; n < res.trace.selected.size(); ++n)
            tw.row(json{{"n", n + 1},
                        {"index", res.trace.selected[n]},
                        {"residual", res.trace.residual_norms[n]},
                        {"eps", res.trace.epsilons[n]}});
    }
    if (!g.report.empty()) {
        qmc::ReportWriter rw(g.report, true);
        rw.metric_row("greedy_discrepancy",
                      json{{"kernel", g.kernel}, {"m", g.steps}, {"p", g.p},
                           {"beta", res.trace.beta}, {"normalization", res.normalization}},
                      res.discrepancy, false);
    }
    std::cout << "knots = " << res.rule.size()
              << ", discrepancy = " << format_double(res.discrepancy)
              << ", beta = " << format_double(res.trace.beta) << "\n";
    return 0;
}

struct UniversalArgs {
    std::string input;
    std::optional<int> n;
    std::vector<int> cscan;
    int trials = 100;
    std::optional<std::uint64_t> seed;
    int oversample = 8;
    std::string report;
};

int run_universal(const UniversalArgs& u) {
    const qmc::PointSet ps = qmc::read_point_set(u.input);
    if (!u.seed) throw qmc::invalid_parameter("universal: --seed is required");
    qmc::ReportWriter report;
    if (!u.report.empty()) report.open(u.report, true);

    if (u.n) {
        const auto res = qmc::universal_linf_check(ps, *u.n, u.trials, *u.seed, u.oversample);
        std::cout << "c1_hat = " << format_double(res.min_ratio) << " at s=(";
        for (std::size_t i = 0; i < res.witness_s.size(); ++i)
            std::cout << (i ? "," : "") << res.witness_s[i];
        std::cout << ") trial " << res.witness_trial << "\n";
        report.metric_row("c1_hat",
                          json{{"input", u.input}, {"n", *u.n}, {"trials", u.trials},
                               {"witness_s", res.witness_s},
                               {"witness_trial", res.witness_trial}},
                          res.min_ratio, false, nullptr, 0, *u.seed);
        return 0;
    }
    std::vector<int> cscan = u.cscan;
    if (cscan.empty()) cscan = {2, 3, 4};
    const auto rows = qmc::universality_vs_dispersion(ps, cscan, u.trials, *u.seed);
    for (const auto& row : rows) {
        std::cout << "c=" << row.c << " n=" << row.n << " c1_hat="
                  << format_double(row.c1_hat)
                  << " disp*2^n=" << format_double(row.disp_scaled) << "\n";
        report.metric_row("c1_hat",
                          json{{"input", u.input}, {"c", row.c}, {"n", row.n},
                               {"trials", u.trials}, {"disp_scaled", row.disp_scaled},
                               {"witness_s", row.witness_s},
                               {"witness_trial", row.witness_trial}},
                          row.c1_hat, false, nullptr, 0, *u.seed);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"point sets, discrepancies, dispersion, and cubature experiments"};
    app.require_subcommand(1);
    int threads = 1;  // reserved; execution is deterministic and serial
    app.add_option("--threads", threads, "reserved, accepted for compatibility");

    GenArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a point set file");
    gen_cmd->add_option("family", gen.family,
                        "fibonacci | frolov | corput | halton | grid | random")
        ->required();
    gen_cmd->add_option("-o,--output", gen.output, "output point file")->required();
    gen_cmd->add_option("--n", gen.n, "fibonacci index");
    gen_cmd->add_option("--d", gen.d, "dimension");
    gen_cmd->add_option("--a", gen.a, "frolov scale parameter");
    gen_cmd->add_option("--m", gen.m, "point count (halton, random)");
    gen_cmd->add_option("--k", gen.k, "grid nodes per axis");
    gen_cmd->add_option("--level", gen.level, "corput level (2^level points)");
    gen_cmd->add_flag("--periodized", gen.periodized, "wrap the frolov set periodically");
    std::uint64_t gen_seed = 0;
    CLI::Option* gen_seed_opt = gen_cmd->add_option("--seed", gen_seed, "rng seed (random)");

    MetricArgs met;
    CLI::App* met_cmd = app.add_subcommand("metric", "evaluate a quality metric");
    met_cmd->add_option("name", met.name,
                        "star | l2star | lq | smooth | smooth-opt | fixedvol | periodic | "
                        "rdisc2 | dispersion | wce | diaphony")
        ->required();
    met_cmd->add_option("-i,--input", met.input, "point file")->required();
    met_cmd->add_option("--report", met.report, "append a JSON-lines row here");
    met_cmd->add_option("--r", met.r, "smoothness order");
    met_cmd->add_option("--q", met.q, "Lq exponent");
    met_cmd->add_option("--samples", met.samples, "Monte Carlo samples");
    met_cmd->add_option("--volume", met.volume, "fixed box volume");
    met_cmd->add_option("--p1", met.p1, "inner norm exponent (inf allowed)");
    met_cmd->add_option("--p2", met.p2, "outer norm exponent (inf allowed)");
    met_cmd->add_option("--zgrid", met.zgrid, "translation grid per axis");
    met_cmd->add_option("--ugrid", met.ugrid, "shape grid per axis");
    long met_kmax = 0;
    CLI::Option* met_kmax_opt = met_cmd->add_option("--kmax", met_kmax, "frequency window");
    met_cmd->add_option("--tol", met.tol, "target tolerance");
    met_cmd->add_option("--budget", met.budget, "search budget");
    std::uint64_t met_seed = 0;
    CLI::Option* met_seed_opt = met_cmd->add_option("--seed", met_seed, "rng seed");

    std::string config_path;
    CLI::App* exp_cmd = app.add_subcommand("experiment", "run a config-driven experiment");
    exp_cmd->add_option("config", config_path, "key = value config file")->required();

    GreedyArgs gr;
    CLI::App* gr_cmd = app.add_subcommand("greedy", "incremental greedy cubature");
    gr_cmd->add_option("--kernel", gr.kernel, "cos | box");
    gr_cmd->add_option("--m,--steps", gr.steps, "number of knots");
    gr_cmd->add_option("--p", gr.p, "space exponent in (1, inf)");
    gr_cmd->add_option("--beta", gr.beta, "schedule multiplier");
    gr_cmd->add_option("--candidates", gr.candidates, "candidate knots");
    gr_cmd->add_option("--grid", gr.grid, "discretization nodes");
    gr_cmd->add_option("--trace", gr.trace, "write per-step JSON-lines here");
    gr_cmd->add_option("--report", gr.report, "append a summary row here");

    UniversalArgs un;
    CLI::App* un_cmd = app.add_subcommand("universal", "discretization ratio checks");
    un_cmd->add_option("-i,--input", un.input, "point file")->required();
    int un_n = 0;
    CLI::Option* un_n_opt = un_cmd->add_option("--n", un_n, "collection level");
    un_cmd->add_option("--cscan", un.cscan, "levels n = log2(m) - c")->delimiter(',');
    un_cmd->add_option("--trials", un.trials, "random polynomials per box");
    un_cmd->add_option("--oversample", un.oversample, "sup-norm grid factor");
    un_cmd->add_option("--report", un.report, "append JSON-lines rows here");
    std::uint64_t un_seed = 0;
    CLI::Option* un_seed_opt = un_cmd->add_option("--seed", un_seed, "rng seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen_cmd->parsed()) {
            if (gen_seed_opt->count()) gen.seed = gen_seed;
            return run_gen(gen);
        }
        if (met_cmd->parsed()) {
            if (met_seed_opt->count()) met.seed = met_seed;
            if (met_kmax_opt->count()) met.kmax = met_kmax;
            return run_metric(met);
        }
        if (exp_cmd->parsed()) {
            qmc::ExperimentConfig cfg;
            {
                std::ifstream f(config_path);
                if (!f) {
                    std::cerr << "cannot open config: " << config_path << "\n";
                    return 2;
                }
                try {
                    cfg = qmc::parse_experiment_config(f);
                } catch (const std::exception& e) {
                    std::cerr << "config error: " << e.what() << "\n";
                    return 2;
                }
            }
            return run_experiment_config(cfg);
        }
        if (gr_cmd->parsed()) return run_greedy(gr);
        if (un_cmd->parsed()) {
            if (un_seed_opt->count()) un.seed = un_seed;
            if (un_n_opt->count()) un.n = un_n;
            return run_universal(un);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
