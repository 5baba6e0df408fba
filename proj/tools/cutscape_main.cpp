#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cutscape/barren.hpp"
#include "cutscape/errors.hpp"
#include "cutscape/flipsearch.hpp"
#include "cutscape/graph.hpp"
#include "cutscape/gwbaseline.hpp"
#include "cutscape/harness.hpp"
#include "cutscape/landscape.hpp"
#include "cutscape/optimizer.hpp"
#include "cutscape/statevec.hpp"

using namespace cutscape;

namespace {

// Exit codes: 0 ok, 2 bad input, 3 resource-cap refusal, 4 non-convergence
// (results are still written before 4 is returned).
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitNoConverge = 4;

struct GlobalOpts {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string csv;
    std::string svg;
};

Ansatz load_ansatz(const std::string& file, const std::string& spec) {
    if (file.empty() == spec.empty())
        throw input_error(
            "provide exactly one of --ansatz FILE or --ansatz-spec SPEC");
    return file.empty() ? parse_ansatz_spec(spec) : read_ansatz_file(file);
}

GraphKind parse_kind(const std::string& name) {
    if (name == "complete") return GraphKind::complete;
    if (name == "kregular") return GraphKind::k_regular;
    if (name == "path") return GraphKind::path_chain;
    if (name == "cycle") return GraphKind::cycle;
    throw input_error("unknown graph kind: " + name +
                      " (complete|kregular|path|cycle)");
}

void maybe_write(const std::string& path, const std::string& content) {
    if (!path.empty()) write_text_file(path, content);
}

void maybe_plot(const GlobalOpts& g, const ExperimentResult& result,
                const PlotStyle& style) {
    if (!g.svg.empty()) emit_plot(result.series, style, g.svg);
}

void print_series(const ExperimentResult& result) {
    for (const Series& s : result.series)
        for (const SeriesPoint& p : s.points)
            std::printf("%s x=%.17g mean=%.6f std=%.6f\n", s.label.c_str(),
                        p.x, p.mean, p.stddev);
}

// Shared sweep options; defaults vary per verb.
struct SweepOpts {
    int n = 8;
    int instances = 100;
    int restarts = 1;
    bool quick = false;
    double wlo = 0.0;
    double whi = 5.0;
    std::vector<int> depths;
    std::vector<int> layers;
    std::vector<int> degrees;
    int gw_trials = 100;
    int gw_rank = 0;
    int gw_iters = 500;
};

ExperimentConfig to_config(const SweepOpts& o, const GlobalOpts& g,
                           bool instances_explicit) {
    ExperimentConfig cfg;
    cfg.n = o.n;
    cfg.instance_count =
        (o.quick && !instances_explicit) ? 25 : o.instances;
    cfg.seed = g.seed;
    cfg.restarts = o.restarts;
    cfg.threads = g.threads;
    cfg.weight_lo = o.wlo;
    cfg.weight_hi = o.whi;
    cfg.depths = o.depths;
    cfg.qaoa_layers = o.layers;
    cfg.degrees = o.degrees;
    cfg.gw.rounding_trials = o.gw_trials;
    cfg.gw.rank = o.gw_rank;
    cfg.gw.descent_iters = o.gw_iters;
    return cfg;
}

void add_sweep_options(CLI::App* sub, SweepOpts& o, int default_n,
                       int default_instances) {
    o.n = default_n;
    o.instances = default_instances;
    sub->add_option("--n", o.n, "vertex count");
    sub->add_option("--instances", o.instances, "graph instances per point");
    sub->add_option("--restarts", o.restarts, "optimizer starts per instance");
    sub->add_flag("--quick", o.quick, "25-instance preset");
    sub->add_option("--wlo", o.wlo, "edge weight lower bound");
    sub->add_option("--whi", o.whi, "edge weight upper bound");
}

std::string gw_csv(const GwResult& res) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%llx,%.17g,%.17g,%d\n",
                  static_cast<unsigned long long>(res.cut.bits), res.value,
                  res.relaxation, res.converged ? 1 : 0);
    return std::string("cut_hex,value,relaxation,converged\n") + buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MaxCut toolbox: commuting X families, landscape audits, "
                 "flip search, and optimizer experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an ini file");
    GlobalOpts global;
    app.add_option("--seed", global.seed, "top-level seed");
    app.add_option("--threads", global.threads, "worker thread cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--csv", global.csv, "write results as CSV");
    app.add_option("--svg", global.svg, "write a plot as SVG");

    int exit_code = kExitOk;

    // ---- gen ----
    auto* gen_cmd = app.add_subcommand("gen", "generate a weighted graph file");
    gen_cmd->fallthrough();
    struct {
        std::string kind = "complete";
        int n = 8;
        int degree = 3;
        double wlo = 0.0;
        double whi = 5.0;
        std::string out;
    } gen_opts;
    gen_cmd->add_option("--kind", gen_opts.kind,
                        "complete|kregular|path|cycle");
    gen_cmd->add_option("--n", gen_opts.n, "vertex count")->required();
    gen_cmd->add_option("--degree", gen_opts.degree, "kregular degree");
    gen_cmd->add_option("--wlo", gen_opts.wlo, "weight lower bound");
    gen_cmd->add_option("--whi", gen_opts.whi, "weight upper bound");
    gen_cmd->add_option("-o,--out", gen_opts.out, "output path")->required();
    gen_cmd->callback([&] {
        GraphGenerator gen;
        gen.kind = parse_kind(gen_opts.kind);
        gen.n = gen_opts.n;
        gen.degree = gen_opts.degree;
        gen.weight_lo = gen_opts.wlo;
        gen.weight_hi = gen_opts.whi;
        gen.seed = global.seed;
        const WeightedGraph g = generate(gen);
        write_graph_file(gen_opts.out, g);
        std::printf("wrote %s: n=%d m=%zu total_weight=%.17g\n",
                    gen_opts.out.c_str(), g.n, g.edges.size(),
                    g.total_weight());
    });

    // ---- landscape-audit ----
    auto* audit_cmd = app.add_subcommand(
        "landscape-audit", "classify every canonical cut of a family");
    audit_cmd->fallthrough();
    struct {
        std::string graph;
        std::string ansatz;
        std::string spec;
        bool witness = false;
    } audit_opts;
    audit_cmd->add_option("--graph", audit_opts.graph, "graph file")
        ->required();
    audit_cmd->add_option("--ansatz", audit_opts.ansatz, "ansatz file");
    audit_cmd->add_option("--ansatz-spec", audit_opts.spec, "ansatz spec");
    audit_cmd->add_flag("--witness", audit_opts.witness,
                        "emit the improving flip mask per non-optimal cut");
    audit_cmd->callback([&] {
        const WeightedGraph g = read_graph_file(audit_opts.graph);
        const Ansatz a = load_ansatz(audit_opts.ansatz, audit_opts.spec);
        const LandscapeSummary summary = classify_all_eigenstates(g, a);
        maybe_write(global.csv, landscape_csv(summary, audit_opts.witness));
        for (int c = 0; c < 5; ++c)
            std::printf("%s=%llu ", cut_class_name(static_cast<CutClass>(c)),
                        static_cast<unsigned long long>(
                            summary.counts[static_cast<std::size_t>(c)]));
        std::printf("local_optima=%llu\n",
                    static_cast<unsigned long long>(summary.local_optima()));
    });

    // ---- flip ----
    auto* flip_cmd = app.add_subcommand(
        "flip", "run the subset-flip local search from random starts");
    flip_cmd->fallthrough();
    struct {
        std::string graph;
        std::string ansatz;
        std::string spec;
        std::string policy = "greedy";
        int trials = 100;
        std::uint64_t max_steps = std::uint64_t{1} << 20;
    } flip_opts;
    flip_cmd->add_option("--graph", flip_opts.graph, "graph file")->required();
    flip_cmd->add_option("--ansatz", flip_opts.ansatz, "ansatz file");
    flip_cmd->add_option("--ansatz-spec", flip_opts.spec, "ansatz spec");
    flip_cmd->add_option("--policy", flip_opts.policy,
                         "uniform_random|first_improvement|greedy");
    flip_cmd->add_option("--trials", flip_opts.trials, "number of starts");
    flip_cmd->add_option("--max-steps", flip_opts.max_steps,
                         "accepted-flip cap per trial");
    flip_cmd->callback([&] {
        const WeightedGraph g = read_graph_file(flip_opts.graph);
        const Ansatz a = load_ansatz(flip_opts.ansatz, flip_opts.spec);
        const std::vector<mask_t> masks = x_masks(a);
        const FlipRunStats stats =
            flip_trials(g, masks, parse_flip_policy(flip_opts.policy),
                        flip_opts.trials, global.seed, flip_opts.max_steps);
        maybe_write(global.csv, flip_csv(stats));
        std::printf(
            "trials=%d optimum=%.17g mean_cut=%.6f mean_alpha=%.6f "
            "mean_steps=%.3f\n",
            stats.trials, stats.optimum, stats.mean_cut, stats.mean_alpha,
            stats.mean_steps);
        for (const FlipTrialRecord& r : stats.records)
            if (!r.converged) exit_code = kExitNoConverge;
    });

    // ---- optimize ----
    auto* opt_cmd = app.add_subcommand(
        "optimize", "minimize the energy objective from random starts");
    opt_cmd->fallthrough();
    struct {
        std::string graph;
        std::string ansatz;
        std::string spec;
        std::string dump_state;
        int restarts = 1;
        double gtol = 1e-6;
        double ftol = 1e-5;
        int max_iters = 1000;
        int memory = 10;
    } opt_opts;
    opt_cmd->add_option("--graph", opt_opts.graph, "graph file")->required();
    opt_cmd->add_option("--ansatz", opt_opts.ansatz, "ansatz file");
    opt_cmd->add_option("--ansatz-spec", opt_opts.spec, "ansatz spec");
    opt_cmd->add_option("--restarts", opt_opts.restarts, "independent starts");
    opt_cmd->add_option("--gtol", opt_opts.gtol, "gradient stop threshold");
    opt_cmd->add_option("--ftol", opt_opts.ftol, "relative decrease stop");
    opt_cmd->add_option("--max-iters", opt_opts.max_iters, "iteration cap");
    opt_cmd->add_option("--memory", opt_opts.memory, "history pairs kept");
    opt_cmd->add_option("--dump-state", opt_opts.dump_state,
                        "write the best run's final state to this file");
    opt_cmd->callback([&] {
        const WeightedGraph g = read_graph_file(opt_opts.graph);
        const Ansatz a = load_ansatz(opt_opts.ansatz, opt_opts.spec);
        OptimizerConfig cfg;
        cfg.gtol = opt_opts.gtol;
        cfg.ftol = opt_opts.ftol;
        cfg.max_iters = opt_opts.max_iters;
        cfg.memory = opt_opts.memory;
        cfg.restarts = opt_opts.restarts;
        cfg.seed = global.seed;
        const std::vector<RunRecord> recs = optimize_ansatz(g, a, cfg);
        maybe_write(global.csv, optimize_csv(recs));
        std::size_t best = 0;
        bool any_clean = false;
        for (std::size_t r = 0; r < recs.size(); ++r) {
            if (recs[r].j_final < recs[best].j_final) best = r;
            any_clean = any_clean || recs[r].clean();
        }
        std::printf("best restart=%zu J=%.17g alpha=%.6f iters=%d reason=%s\n",
                    best, recs[best].j_final, recs[best].alpha,
                    recs[best].iterations,
                    stop_reason_name(recs[best].converged_by));
        if (!opt_opts.dump_state.empty()) {
            const StateVector psi = prepare(a, recs[best].theta);
            save_state(psi, opt_opts.dump_state);
        }
        if (!any_clean) exit_code = kExitNoConverge;
    });

    // ---- variance ----
    auto* var_cmd = app.add_subcommand(
        "variance", "gradient-component variance: closed form and Monte Carlo");
    var_cmd->fallthrough();
    struct {
        std::string graph;
        std::string ansatz;
        std::string spec;
        int k = 0;
        std::uint64_t samples = 100000;
    } var_opts;
    var_cmd->add_option("--graph", var_opts.graph, "graph file")->required();
    var_cmd->add_option("--ansatz", var_opts.ansatz, "ansatz file");
    var_cmd->add_option("--ansatz-spec", var_opts.spec, "ansatz spec");
    var_cmd->add_option("--k", var_opts.k, "parameter index")->required();
    var_cmd->add_option("--samples", var_opts.samples,
                        "Monte Carlo samples (0 = closed form only)");
    var_cmd->callback([&] {
        const WeightedGraph g = read_graph_file(var_opts.graph);
        const Ansatz a = load_ansatz(var_opts.ansatz, var_opts.spec);
        const VarianceReport rep =
            var_opts.samples == 0
                ? variance_closed_form(g, a, var_opts.k)
                : variance_report(g, a, var_opts.k, var_opts.samples,
                                  global.seed);
        maybe_write(global.csv, variance_csv(rep));
        std::printf("k=%d closed_form=%.17g", rep.k, rep.closed_form);
        if (rep.samples != 0)
            std::printf(" mc=%.17g stderr=%.3g samples=%llu",
                        rep.mc_estimate, rep.mc_stderr,
                        static_cast<unsigned long long>(rep.samples));
        std::printf("\n");
    });

    // ---- gw ----
    auto* gw_cmd = app.add_subcommand(
        "gw", "low-rank relaxation plus hyperplane rounding");
    gw_cmd->fallthrough();
    struct {
        std::string graph;
        int trials = 100;
        int rank = 0;
        int iters = 500;
    } gw_opts;
    gw_cmd->add_option("--graph", gw_opts.graph, "graph file")->required();
    gw_cmd->add_option("--trials", gw_opts.trials, "hyperplane draws");
    gw_cmd->add_option("--rank", gw_opts.rank, "factor rank (0 = auto)");
    gw_cmd->add_option("--iters", gw_opts.iters, "ascent iteration budget");
    gw_cmd->callback([&] {
        const WeightedGraph g = read_graph_file(gw_opts.graph);
        GwConfig cfg;
        cfg.rank = gw_opts.rank;
        cfg.descent_iters = gw_opts.iters;
        cfg.rounding_trials = gw_opts.trials;
        cfg.seed = global.seed;
        const GwResult res = gw_maxcut(g, cfg);
        maybe_write(global.csv, gw_csv(res));
        std::printf("cut=%llx value=%.17g relaxation=%.17g converged=%d\n",
                    static_cast<unsigned long long>(res.cut.bits), res.value,
                    res.relaxation, res.converged ? 1 : 0);
        if (!res.converged) exit_code = kExitNoConverge;
    });

    // ---- sweep-depth ----
    auto* depth_cmd = app.add_subcommand(
        "sweep-depth", "approximation ratio vs k-body depth");
    depth_cmd->fallthrough();
    SweepOpts depth_sw;
    add_sweep_options(depth_cmd, depth_sw, 8, 100);
    auto* depth_inst = depth_cmd->get_option("--instances");
    depth_cmd->add_option("--depths", depth_sw.depths,
                          "depth grid (default 1..n-1)")
        ->delimiter(',');
    depth_cmd->callback([&] {
        const ExperimentResult res = run_depth_sweep(
            to_config(depth_sw, global, depth_inst->count() > 0));
        maybe_write(global.csv, series_csv(res));
        maybe_plot(global, res,
                   {"approximation ratio vs k-body depth", "k-body depth D",
                    "approximation ratio"});
        print_series(res);
    });

    // ---- sweep-xz ----
    auto* xz_cmd = app.add_subcommand(
        "sweep-xz", "X family vs Z-interleaved variants");
    xz_cmd->fallthrough();
    SweepOpts xz_sw;
    add_sweep_options(xz_cmd, xz_sw, 8, 100);
    auto* xz_inst = xz_cmd->get_option("--instances");
    xz_cmd->add_option("--depths", xz_sw.depths,
                       "depth grid (default 1..n-1)")
        ->delimiter(',');
    xz_cmd->callback([&] {
        const ExperimentResult res =
            run_xz_sweep(to_config(xz_sw, global, xz_inst->count() > 0));
        maybe_write(global.csv, series_csv(res));
        maybe_plot(global, res,
                   {"Z-interleaving vs pure X families", "k-body depth D",
                    "approximation ratio"});
        print_series(res);
    });

    // ---- compare-qaoa ----
    auto* qaoa_cmd = app.add_subcommand(
        "compare-qaoa", "subset families vs layered mixer-phase ansatz");
    qaoa_cmd->fallthrough();
    SweepOpts qaoa_sw;
    add_sweep_options(qaoa_cmd, qaoa_sw, 8, 100);
    auto* qaoa_inst = qaoa_cmd->get_option("--instances");
    qaoa_cmd->add_option("--depths", qaoa_sw.depths,
                         "subset-family depth grid (default 1..n-1)")
        ->delimiter(',');
    qaoa_cmd->add_option("--layers", qaoa_sw.layers,
                         "layer grid (default 1..6)")
        ->delimiter(',');
    qaoa_cmd->callback([&] {
        const ExperimentResult res = run_qaoa_compare(
            to_config(qaoa_sw, global, qaoa_inst->count() > 0));
        maybe_write(global.csv, series_csv(res));
        maybe_plot(global, res,
                   {"approximation ratio vs parameter count",
                    "parameter count M", "approximation ratio"});
        print_series(res);
    });

    // ---- compare-gw ----
    auto* cgw_cmd = app.add_subcommand(
        "compare-gw", "gradient optimizer vs rounded relaxation baseline");
    cgw_cmd->fallthrough();
    SweepOpts cgw_sw;
    add_sweep_options(cgw_cmd, cgw_sw, 20, 50);
    auto* cgw_inst = cgw_cmd->get_option("--instances");
    cgw_cmd->add_option("--degrees", cgw_sw.degrees,
                        "vertex degree grid (default 2..10)")
        ->delimiter(',');
    cgw_cmd->add_option("--trials", cgw_sw.gw_trials, "hyperplane draws");
    cgw_cmd->add_option("--rank", cgw_sw.gw_rank, "factor rank (0 = auto)");
    cgw_cmd->add_option("--iters", cgw_sw.gw_iters, "ascent iteration budget");
    cgw_cmd->callback([&] {
        const ExperimentResult res = run_gw_compare(
            to_config(cgw_sw, global, cgw_inst->count() > 0));
        maybe_write(global.csv, series_csv(res));
        maybe_plot(global, res,
                   {"gradient vs rounded-relaxation baseline", "vertex degree",
                    "alpha_grad / alpha_gw"});
        print_series(res);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    } catch (const input_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const cap_error& e) {
        std::fprintf(stderr, "refused: %s\n", e.what());
        return kExitCap;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return 1;
    }
    return exit_code;
}
