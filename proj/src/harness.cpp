#include "cutscape/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>

#include "cutscape/errors.hpp"
#include "cutscape/parallel.hpp"
#include "cutscape/rng.hpp"

namespace cutscape {
namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_coord(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string fmt_hex(mask_t m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llx",
                  static_cast<unsigned long long>(m));
    return buf;
}

void check_common(const ExperimentConfig& cfg) {
    if (cfg.n < 2) throw input_error("experiment: need at least two vertices");
    if (cfg.instance_count < 1)
        throw input_error("experiment: instance_count must be >= 1");
    if (cfg.restarts < 1)
        throw input_error("experiment: restarts must be >= 1");
    if (!(cfg.weight_lo <= cfg.weight_hi))
        throw input_error("experiment: weight_lo must not exceed weight_hi");
}

std::vector<WeightedGraph> instance_graphs(const ExperimentConfig& cfg) {
    std::vector<WeightedGraph> graphs(
        static_cast<std::size_t>(cfg.instance_count));
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        GraphGenerator gen;
        gen.kind = GraphKind::complete;
        gen.n = cfg.n;
        gen.weight_lo = cfg.weight_lo;
        gen.weight_hi = cfg.weight_hi;
        gen.seed = derive_seed(cfg.seed, "graph", i);
        graphs[i] = generate(gen);
    }
    return graphs;
}

void finish_point(SeriesPoint& p) {
    const double count = static_cast<double>(p.values.size());
    p.mean = std::accumulate(p.values.begin(), p.values.end(), 0.0) / count;
    double var = 0.0;
    for (const double v : p.values) var += (v - p.mean) * (v - p.mean);
    p.stddev = std::sqrt(var / count);
}

// One grid point: optimize `a` on every instance, keep the best restart.
SeriesPoint run_point(const ExperimentConfig& cfg,
                      const std::vector<WeightedGraph>& graphs,
                      const Ansatz& a, double x, std::string_view seed_label,
                      std::uint64_t xkey) {
    SeriesPoint p;
    p.x = x;
    p.values.resize(graphs.size());
    parallel_for(graphs.size(), cfg.threads, [&](std::size_t i) {
        OptimizerConfig oc = cfg.opt;
        oc.restarts = cfg.restarts;
        oc.seed = derive_seed(cfg.seed, seed_label, (xkey << 32) | i);
        double best = -1e300;
        for (const RunRecord& rec : optimize_ansatz(graphs[i], a, oc))
            best = std::max(best, rec.alpha);
        p.values[i] = best;
    });
    finish_point(p);
    return p;
}

std::vector<int> depth_grid(const ExperimentConfig& cfg) {
    if (!cfg.depths.empty()) {
        for (const int d : cfg.depths)
            if (d < 1 || d > cfg.n)
                throw input_error("experiment: depth out of range: " +
                                  std::to_string(d));
        return cfg.depths;
    }
    std::vector<int> depths(static_cast<std::size_t>(cfg.n - 1));
    std::iota(depths.begin(), depths.end(), 1);
    return depths;
}

std::vector<int> layer_grid(const ExperimentConfig& cfg) {
    if (!cfg.qaoa_layers.empty()) {
        for (const int p : cfg.qaoa_layers)
            if (p < 1)
                throw input_error("experiment: layer count must be >= 1");
        return cfg.qaoa_layers;
    }
    return {1, 2, 3, 4, 5, 6};
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::depth_sweep: return "depth_sweep";
        case ExperimentKind::xz_sweep: return "xz_sweep";
        case ExperimentKind::qaoa_compare: return "qaoa_compare";
        case ExperimentKind::gw_compare: return "gw_compare";
    }
    return "?";
}

ExperimentResult run_depth_sweep(const ExperimentConfig& cfg) {
    check_common(cfg);
    const std::vector<int> depths = depth_grid(cfg);
    const std::vector<WeightedGraph> graphs = instance_graphs(cfg);
    ExperimentResult out;
    out.kind = ExperimentKind::depth_sweep;
    Series s;
    s.label = "x";
    for (const int d : depths)
        s.points.push_back(run_point(cfg, graphs, x_ansatz_depth(cfg.n, d), d,
                                     "opt-x",
                                     static_cast<std::uint64_t>(d)));
    out.series.push_back(std::move(s));
    return out;
}

ExperimentResult run_xz_sweep(const ExperimentConfig& cfg) {
    check_common(cfg);
    const std::vector<int> depths = depth_grid(cfg);
    const std::vector<WeightedGraph> graphs = instance_graphs(cfg);
    ExperimentResult out;
    out.kind = ExperimentKind::xz_sweep;

    Series x;
    x.label = "x";
    Series kbody;
    kbody.label = "xz_kbody";
    Series global;
    global.label = "xz_global";
    for (const int d : depths) {
        const auto key = static_cast<std::uint64_t>(d);
        x.points.push_back(run_point(cfg, graphs, x_ansatz_depth(cfg.n, d), d,
                                     "opt-x", key));
        kbody.points.push_back(
            run_point(cfg, graphs, xz_ansatz(cfg.n, d, XzVariant::kbody_z), d,
                      "opt-xzk", key));
        global.points.push_back(
            run_point(cfg, graphs, xz_ansatz(cfg.n, d, XzVariant::global_z), d,
                      "opt-xzg", key));
    }
    out.series = {std::move(x), std::move(kbody), std::move(global)};
    return out;
}

ExperimentResult run_qaoa_compare(const ExperimentConfig& cfg) {
    check_common(cfg);
    const std::vector<int> depths = depth_grid(cfg);
    const std::vector<int> layers = layer_grid(cfg);
    const std::vector<WeightedGraph> graphs = instance_graphs(cfg);
    ExperimentResult out;
    out.kind = ExperimentKind::qaoa_compare;

    Series x;
    x.label = "x";
    Series kbody;
    kbody.label = "xz_kbody";
    for (const int d : depths) {
        const auto key = static_cast<std::uint64_t>(d);
        const Ansatz ax = x_ansatz_depth(cfg.n, d);
        x.points.push_back(
            run_point(cfg, graphs, ax, ax.param_count(), "opt-x", key));
        const Ansatz az = xz_ansatz(cfg.n, d, XzVariant::kbody_z);
        kbody.points.push_back(
            run_point(cfg, graphs, az, az.param_count(), "opt-xzk", key));
    }

    Series standard;
    standard.label = "qaoa_standard";
    Series localx;
    localx.label = "qaoa_localx";
    Series localx0;
    localx0.label = "qaoa_localx0";
    for (const int p : layers) {
        const auto key = static_cast<std::uint64_t>(p);
        const Ansatz qs = qaoa_ansatz(cfg.n, p, QaoaVariant::standard);
        standard.points.push_back(
            run_point(cfg, graphs, qs, qs.param_count(), "opt-qs", key));
        const Ansatz ql = qaoa_ansatz(cfg.n, p, QaoaVariant::local_x);
        localx.points.push_back(
            run_point(cfg, graphs, ql, ql.param_count(), "opt-ql", key));
        const Ansatz qz =
            qaoa_ansatz(cfg.n, p, QaoaVariant::local_x_zero_start);
        localx0.points.push_back(
            run_point(cfg, graphs, qz, qz.param_count(), "opt-qz", key));
    }
    out.series = {std::move(x), std::move(kbody), std::move(standard),
                  std::move(localx), std::move(localx0)};
    return out;
}

ExperimentResult run_gw_compare(const ExperimentConfig& cfg) {
    check_common(cfg);
    std::vector<int> degrees = cfg.degrees;
    if (degrees.empty()) {
        degrees.resize(9);
        std::iota(degrees.begin(), degrees.end(), 2);
    }
    GraphGenerator gen;
    gen.n = cfg.n;
    gen.weight_lo = cfg.weight_lo;
    gen.weight_hi = cfg.weight_hi;
    gen.seed = cfg.seed;
    OptimizerConfig oc = cfg.opt;
    oc.restarts = cfg.restarts;
    const std::vector<GwCompareRow> rows = compare_grad_vs_gw(
        gen, degrees, cfg.instance_count, oc, cfg.gw, cfg.threads);

    ExperimentResult out;
    out.kind = ExperimentKind::gw_compare;
    Series s;
    s.label = "grad_vs_gw";
    for (const GwCompareRow& row : rows) {
        SeriesPoint p;
        p.x = row.degree;
        p.mean = row.mean_ratio;
        p.stddev = row.std_ratio;
        p.values.reserve(row.per_instance.size());
        for (const GwCompareInstance& inst : row.per_instance)
            p.values.push_back(inst.ratio);
        s.points.push_back(std::move(p));
    }
    out.series.push_back(std::move(s));
    return out;
}

ExperimentResult run_experiment(ExperimentKind kind,
                                const ExperimentConfig& cfg) {
    switch (kind) {
        case ExperimentKind::depth_sweep: return run_depth_sweep(cfg);
        case ExperimentKind::xz_sweep: return run_xz_sweep(cfg);
        case ExperimentKind::qaoa_compare: return run_qaoa_compare(cfg);
        case ExperimentKind::gw_compare: return run_gw_compare(cfg);
    }
    throw input_error("run_experiment: unknown experiment kind");
}

std::string series_csv(const ExperimentResult& result) {
    std::string out = "series,x,instance,value\n";
    for (const Series& s : result.series)
        for (const SeriesPoint& p : s.points)
            for (std::size_t i = 0; i < p.values.size(); ++i)
                out += s.label + "," + fmt17(p.x) + "," + std::to_string(i) +
                       "," + fmt17(p.values[i]) + "\n";
    out += "series,x,mean,std\n";
    for (const Series& s : result.series)
        for (const SeriesPoint& p : s.points)
            out += s.label + "," + fmt17(p.x) + "," + fmt17(p.mean) + "," +
                   fmt17(p.stddev) + "\n";
    return out;
}

std::string flip_csv(const FlipRunStats& stats) {
    std::string out = "trial,start_hex,final_hex,cutval,alpha,steps\n";
    for (const FlipTrialRecord& r : stats.records)
        out += std::to_string(r.trial) + "," + fmt_hex(r.start) + "," +
               fmt_hex(r.final) + "," + fmt17(r.cut_value) + "," +
               fmt17(r.alpha) + "," + std::to_string(r.steps) + "\n";
    return out;
}

std::string optimize_csv(std::span<const RunRecord> records) {
    std::string out = "restart,J_final,alpha,iters,converged_by\n";
    for (std::size_t r = 0; r < records.size(); ++r)
        out += std::to_string(r) + "," + fmt17(records[r].j_final) + "," +
               fmt17(records[r].alpha) + "," +
               std::to_string(records[r].iterations) + "," +
               stop_reason_name(records[r].converged_by) + "\n";
    return out;
}

std::string variance_csv(const VarianceReport& report) {
    std::string out = "a,b,w,cut_size,kernel_count,contribution\n";
    for (const EdgeVarianceTerm& t : report.per_edge)
        out += std::to_string(t.a) + "," + std::to_string(t.b) + "," +
               fmt17(t.w) + "," + std::to_string(t.cut_size) + "," +
               std::to_string(t.kernel_count) + "," + fmt17(t.contribution) +
               "\n";
    out += "k,closed_form,mc_estimate,mc_stderr,samples\n";
    out += std::to_string(report.k) + "," + fmt17(report.closed_form) + "," +
           fmt17(report.mc_estimate) + "," + fmt17(report.mc_stderr) + "," +
           std::to_string(report.samples) + "\n";
    return out;
}

std::string landscape_csv(const LandscapeSummary& summary, bool witness) {
    std::string out =
        witness ? "cut_hex,j_value,classification,witness_hex\n"
                : "cut_hex,j_value,classification\n";
    for (const EigenstateReport& r : summary.reports) {
        out += fmt_hex(r.cut) + "," + fmt17(r.j_value) + "," +
               cut_class_name(r.cls);
        if (witness) {
            out += ",";
            if (r.cls != CutClass::global_min) out += fmt_hex(r.witness);
        }
        out += "\n";
    }
    out += "# counts";
    for (int c = 0; c < 5; ++c)
        out += std::string(" ") + cut_class_name(static_cast<CutClass>(c)) +
               "=" + std::to_string(summary.counts[static_cast<std::size_t>(c)]);
    out += " local_optima=" + std::to_string(summary.local_optima()) + "\n";
    return out;
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

}  // namespace

std::string render_plot(const std::vector<Series>& series,
                        const PlotStyle& style) {
    std::size_t total_points = 0;
    for (const Series& s : series) total_points += s.points.size();
    if (total_points == 0) throw input_error("render_plot: nothing to draw");

    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const Series& s : series) {
        for (const SeriesPoint& p : s.points) {
            xlo = std::min(xlo, p.x);
            xhi = std::max(xhi, p.x);
            ylo = std::min(ylo, p.mean - p.stddev);
            yhi = std::max(yhi, p.mean + p.stddev);
        }
    }
    if (xhi - xlo < 1e-12) {
        xlo -= 1.0;
        xhi += 1.0;
    }
    const double ypad = std::max(0.05 * (yhi - ylo), 1e-12);
    ylo -= ypad;
    yhi += ypad;
    if (yhi - ylo < 1e-12) {
        ylo -= 1.0;
        yhi += 1.0;
    }

    const double bx = 70.0, by = 40.0, bw = 700.0, bh = 420.0;
    const auto sx = [&](double v) { return bx + (v - xlo) / (xhi - xlo) * bw; };
    const auto sy = [&](double v) {
        return by + (yhi - v) / (yhi - ylo) * bh;
    };

    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
        "height=\"520\" viewBox=\"0 0 800 520\">\n"
        "<rect width=\"800\" height=\"520\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + fmt_coord(bx) + "\" y=\"" + fmt_coord(by) +
           "\" width=\"" + fmt_coord(bw) + "\" height=\"" + fmt_coord(bh) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";

    // y ticks: five evenly spaced grid lines with labels
    for (int t = 0; t <= 4; ++t) {
        const double v = ylo + (yhi - ylo) * t / 4.0;
        const double y = sy(v);
        svg += "<line x1=\"" + fmt_coord(bx) + "\" y1=\"" + fmt_coord(y) +
               "\" x2=\"" + fmt_coord(bx + bw) + "\" y2=\"" + fmt_coord(y) +
               "\" stroke=\"#ddd\"/>\n";
        svg += "<text x=\"" + fmt_coord(bx - 8.0) + "\" y=\"" +
               fmt_coord(y + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"12\">" +
               fmt_tick(v) + "</text>\n";
    }
    // x ticks: one per distinct data x when the grid is small, else six
    std::vector<double> xticks;
    {
        std::vector<double> xs;
        for (const Series& s : series)
            for (const SeriesPoint& p : s.points) xs.push_back(p.x);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        if (xs.size() <= 16) {
            xticks = xs;
        } else {
            for (int t = 0; t <= 5; ++t)
                xticks.push_back(xlo + (xhi - xlo) * t / 5.0);
        }
    }
    for (const double v : xticks) {
        const double x = sx(v);
        svg += "<line x1=\"" + fmt_coord(x) + "\" y1=\"" + fmt_coord(by + bh) +
               "\" x2=\"" + fmt_coord(x) + "\" y2=\"" +
               fmt_coord(by + bh + 5.0) + "\" stroke=\"#444\"/>\n";
        svg += "<text x=\"" + fmt_coord(x) + "\" y=\"" +
               fmt_coord(by + bh + 20.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\">" +
               fmt_tick(v) + "</text>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        if (s.points.empty()) continue;
        const char* color = kPalette[si % 6];
        // +-1 std band: top edge left to right, bottom edge right to left
        std::string band;
        for (const SeriesPoint& p : s.points)
            band += fmt_coord(sx(p.x)) + "," +
                    fmt_coord(sy(p.mean + p.stddev)) + " ";
        for (auto it = s.points.rbegin(); it != s.points.rend(); ++it)
            band += fmt_coord(sx(it->x)) + "," +
                    fmt_coord(sy(it->mean - it->stddev)) + " ";
        band.pop_back();
        svg += "<polygon points=\"" + band + "\" fill=\"" + color +
               "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
        if (s.points.size() > 1) {
            std::string line;
            for (const SeriesPoint& p : s.points)
                line += fmt_coord(sx(p.x)) + "," + fmt_coord(sy(p.mean)) + " ";
            line.pop_back();
            svg += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"" +
                   std::string(color) + "\" stroke-width=\"1.8\"/>\n";
        }
        for (const SeriesPoint& p : s.points)
            svg += "<circle cx=\"" + fmt_coord(sx(p.x)) + "\" cy=\"" +
                   fmt_coord(sy(p.mean)) + "\" r=\"3\" fill=\"" + color +
                   "\"/>\n";
        // legend entry
        const double ly = by + 16.0 + 18.0 * static_cast<double>(si);
        svg += "<line x1=\"" + fmt_coord(bx + bw - 150.0) + "\" y1=\"" +
               fmt_coord(ly - 4.0) + "\" x2=\"" + fmt_coord(bx + bw - 122.0) +
               "\" y2=\"" + fmt_coord(ly - 4.0) + "\" stroke=\"" +
               std::string(color) + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt_coord(bx + bw - 116.0) + "\" y=\"" +
               fmt_coord(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" +
               xml_escape(s.label) + "</text>\n";
    }

    if (!style.title.empty())
        svg += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"16\">" +
               xml_escape(style.title) + "</text>\n";
    if (!style.x_label.empty())
        svg += "<text x=\"" + fmt_coord(bx + bw / 2.0) +
               "\" y=\"505\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"13\">" +
               xml_escape(style.x_label) + "</text>\n";
    if (!style.y_label.empty())
        svg += "<text x=\"18\" y=\"" + fmt_coord(by + bh / 2.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"13\" transform=\"rotate(-90 18 " +
               fmt_coord(by + bh / 2.0) + ")\">" +
               xml_escape(style.y_label) + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

void emit_plot(const std::vector<Series>& series, const PlotStyle& style,
               const std::string& path) {
    write_text_file(path, render_plot(series, style));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot open for writing: " + path);
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw input_error("write failed: " + path);
}

}  // namespace cutscape
