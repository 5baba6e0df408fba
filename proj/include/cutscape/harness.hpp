#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cutscape/barren.hpp"
#include "cutscape/flipsearch.hpp"
#include "cutscape/graph.hpp"
#include "cutscape/gwbaseline.hpp"
#include "cutscape/landscape.hpp"
#include "cutscape/optimizer.hpp"

namespace cutscape {

// Experiment sweeps over random graph ensembles. One top-level seed fans out
// to per-instance seeds by counter, instances are shared across every series
// of one experiment (paired comparison), and results are collected by index,
// so output is identical for any thread count.

enum class ExperimentKind {
    depth_sweep,
    xz_sweep,
    qaoa_compare,
    gw_compare,
};
const char* experiment_name(ExperimentKind kind);

struct ExperimentConfig {
    int n = 8;
    int instance_count = 100;
    std::uint64_t seed = 0;
    int restarts = 1;          // optimizer starts per instance; best is kept
    int threads = 1;
    double weight_lo = 0.0;    // instance edge weights ~ U[lo, hi)
    double weight_hi = 5.0;
    std::vector<int> depths;       // sweep grid; empty -> 1..n-1
    std::vector<int> qaoa_layers;  // layer grid; empty -> 1..6
    std::vector<int> degrees;      // gw comparison; empty -> 2..10
    OptimizerConfig opt;           // tolerances; seed/restarts set per run
    GwConfig gw;                   // gw comparison knobs; seed set per run
};

struct SeriesPoint {
    double x = 0.0;            // depth, parameter count, or vertex degree
    double mean = 0.0;
    double stddev = 0.0;       // population std over instances
    std::vector<double> values;  // per-instance value, index = instance
};

struct Series {
    std::string label;
    std::vector<SeriesPoint> points;
};

struct ExperimentResult {
    ExperimentKind kind = ExperimentKind::depth_sweep;
    std::vector<Series> series;
};

// Approximation ratio vs k-body depth on random complete graphs.
ExperimentResult run_depth_sweep(const ExperimentConfig& cfg);
// Pure-X family vs the two Z-interleaved variants, same graphs.
ExperimentResult run_xz_sweep(const ExperimentConfig& cfg);
// X / XZ families vs the layered mixer-phase ansatz variants, keyed by
// parameter count.
ExperimentResult run_qaoa_compare(const ExperimentConfig& cfg);
// Gradient optimizer vs the rounded relaxation baseline on regular graphs,
// keyed by vertex degree; values are per-instance ratio alpha_grad/alpha_gw.
ExperimentResult run_gw_compare(const ExperimentConfig& cfg);

ExperimentResult run_experiment(ExperimentKind kind,
                                const ExperimentConfig& cfg);

// Deterministic CSV renderings (fixed formatting, no locale, no timestamps).
std::string series_csv(const ExperimentResult& result);
std::string flip_csv(const FlipRunStats& stats);
std::string optimize_csv(std::span<const RunRecord> records);
std::string variance_csv(const VarianceReport& report);
std::string landscape_csv(const LandscapeSummary& summary, bool witness);

struct PlotStyle {
    std::string title;
    std::string x_label;
    std::string y_label;
};

// Line plot with a shaded +-1 std band per series; byte-deterministic for
// fixed input. Throws input_error when there is nothing to draw.
std::string render_plot(const std::vector<Series>& series,
                        const PlotStyle& style);
void emit_plot(const std::vector<Series>& series, const PlotStyle& style,
               const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace cutscape
