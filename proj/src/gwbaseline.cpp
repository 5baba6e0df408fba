#include "cutscape/gwbaseline.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cutscape/bits.hpp"
#include "cutscape/errors.hpp"
#include "cutscape/parallel.hpp"
#include "cutscape/rng.hpp"

namespace cutscape {
namespace {

constexpr double kArmijoC = 1e-4;
constexpr int kBacktracks = 60;

struct SphereProduct {
    int n = 0;
    int r = 0;
    std::vector<double> v;  // row-major n x r, rows unit-length

    double* row(int a) { return v.data() + static_cast<std::size_t>(a) * r; }
    const double* row(int a) const {
        return v.data() + static_cast<std::size_t>(a) * r;
    }
};

void normalize_rows(SphereProduct& sp) {
    for (int a = 0; a < sp.n; ++a) {
        double* va = sp.row(a);
        double nrm = 0.0;
        for (int j = 0; j < sp.r; ++j) nrm += va[j] * va[j];
        nrm = std::sqrt(nrm);
        if (nrm < 1e-300) {  // degenerate row: park it at the first axis
            std::fill(va, va + sp.r, 0.0);
            va[0] = 1.0;
        } else {
            for (int j = 0; j < sp.r; ++j) va[j] /= nrm;
        }
    }
}

double relaxation_value(const WeightedGraph& g, const SphereProduct& sp) {
    double f = 0.0;
    for (const Edge& e : g.edges) {
        const double* va = sp.row(e.a);
        const double* vb = sp.row(e.b);
        double dot = 0.0;
        for (int j = 0; j < sp.r; ++j) dot += va[j] * vb[j];
        f += e.w * (1.0 - dot);
    }
    return 0.5 * f;
}

// Euclidean ascent gradient dF/dv_a = -1/2 sum_b w_ab v_b; returns the
// squared norm of its projection onto the product-of-spheres tangent space.
double ascent_gradient(const WeightedGraph& g, const SphereProduct& sp,
                       std::vector<double>& grad) {
    grad.assign(sp.v.size(), 0.0);
    for (const Edge& e : g.edges) {
        const double* va = sp.row(e.a);
        const double* vb = sp.row(e.b);
        double* ga = grad.data() + static_cast<std::size_t>(e.a) * sp.r;
        double* gb = grad.data() + static_cast<std::size_t>(e.b) * sp.r;
        for (int j = 0; j < sp.r; ++j) {
            ga[j] -= 0.5 * e.w * vb[j];
            gb[j] -= 0.5 * e.w * va[j];
        }
    }
    double tangent_sq = 0.0;
    for (int a = 0; a < sp.n; ++a) {
        const double* va = sp.row(a);
        const double* ga = grad.data() + static_cast<std::size_t>(a) * sp.r;
        double along = 0.0;
        for (int j = 0; j < sp.r; ++j) along += ga[j] * va[j];
        for (int j = 0; j < sp.r; ++j) {
            const double t = ga[j] - along * va[j];
            tangent_sq += t * t;
        }
    }
    return tangent_sq;
}

void check_config(const GwConfig& cfg) {
    if (cfg.rank != 0 && cfg.rank < 2)
        throw input_error("gw_maxcut: rank must be >= 2 (0 selects the default)");
    if (cfg.descent_iters < 1)
        throw input_error("gw_maxcut: descent_iters must be >= 1");
    if (cfg.rounding_trials < 1)
        throw input_error("gw_maxcut: rounding_trials must be >= 1");
}

}  // namespace

GwResult gw_maxcut(const WeightedGraph& g, const GwConfig& cfg) {
    g.validate();
    check_config(cfg);
    if (g.n < 2) throw input_error("gw_maxcut: need at least two vertices");

    SphereProduct sp;
    sp.n = g.n;
    sp.r = cfg.rank != 0
               ? cfg.rank
               : std::max(2, static_cast<int>(
                                 std::ceil(std::sqrt(2.0 * g.n))));
    sp.v.resize(static_cast<std::size_t>(sp.n) * sp.r);
    {
        Rng rng(derive_seed(cfg.seed, "gw-init"));
        for (double& x : sp.v) x = rng.normal();
        normalize_rows(sp);
    }

    // Curvature scale for the initial step: largest weighted vertex degree.
    std::vector<double> incident(static_cast<std::size_t>(g.n), 0.0);
    for (const Edge& e : g.edges) {
        incident[static_cast<std::size_t>(e.a)] += std::abs(e.w);
        incident[static_cast<std::size_t>(e.b)] += std::abs(e.w);
    }
    const double max_row_weight =
        *std::max_element(incident.begin(), incident.end());

    GwResult out;
    double f = relaxation_value(g, sp);
    double step = 1.0 / (1.0 + 0.5 * max_row_weight);
    std::vector<double> grad;
    std::vector<double> trial(sp.v.size());
    double tangent_sq = 0.0;

    for (int iter = 0; iter < cfg.descent_iters; ++iter) {
        tangent_sq = ascent_gradient(g, sp, grad);
        if (std::sqrt(tangent_sq) <= 1e-9 * (1.0 + std::abs(f))) break;

        bool accepted = false;
        for (int bt = 0; bt < kBacktracks; ++bt) {
            for (std::size_t i = 0; i < sp.v.size(); ++i)
                trial[i] = sp.v[i] + step * grad[i];
            SphereProduct next{sp.n, sp.r, std::move(trial)};
            normalize_rows(next);
            const double f_next = relaxation_value(g, next);
            if (f_next >= f + kArmijoC * step * tangent_sq) {
                trial = std::move(sp.v);  // recycle the old buffer
                sp.v = std::move(next.v);
                f = f_next;
                step = std::min(2.0 * step, 1e6);
                accepted = true;
                break;
            }
            trial = std::move(next.v);
            step *= 0.5;
        }
        out.iterations = iter + 1;
        if (!accepted) break;  // numerically stationary along the gradient
    }
    // Recompute at the final point so the flag reflects where we stopped.
    tangent_sq = ascent_gradient(g, sp, grad);
    out.converged = std::sqrt(tangent_sq) <= 1e-5 * (1.0 + std::abs(f));
    out.relaxation = f;

    mask_t best_mask = 0;
    double best_val = -1.0;
    std::vector<double> plane(static_cast<std::size_t>(sp.r));
    for (int t = 0; t < cfg.rounding_trials; ++t) {
        Rng rng(derive_seed(cfg.seed, "gw-round",
                            static_cast<std::uint64_t>(t)));
        for (double& h : plane) h = rng.normal();
        mask_t m = 0;
        for (int a = 0; a < g.n; ++a) {
            const double* va = sp.row(a);
            double s = 0.0;
            for (int j = 0; j < sp.r; ++j) s += plane[static_cast<std::size_t>(j)] * va[j];
            if (s < 0.0) m |= bit(a);
        }
        const double val = cut_value(g, m);
        if (val > best_val) {
            best_val = val;
            best_mask = m;
        }
    }

    out.cut = CutAssignment{canonical_cut(best_mask, g.n), g.n};
    out.value = cut_value(g, out.cut.bits);
    return out;
}

std::vector<GwCompareRow> compare_grad_vs_gw(const GraphGenerator& gen,
                                             std::span<const int> degrees,
                                             int instances,
                                             const OptimizerConfig& opt_cfg,
                                             const GwConfig& gw_cfg,
                                             int threads) {
    if (degrees.empty())
        throw input_error("compare_grad_vs_gw: empty degree list");
    if (instances < 1)
        throw input_error("compare_grad_vs_gw: instances must be >= 1");
    if (gen.n < 2)
        throw input_error("compare_grad_vs_gw: need at least two vertices");
    if (gen.n > kBruteForceCapDefault)
        throw cap_error("compare_grad_vs_gw: n = " + std::to_string(gen.n) +
                        " exceeds the exact-ratio cap " +
                        std::to_string(kBruteForceCapDefault));

    std::vector<GwCompareRow> rows(degrees.size());
    for (std::size_t di = 0; di < degrees.size(); ++di) {
        GwCompareRow& row = rows[di];
        row.degree = degrees[di];
        row.per_instance.resize(static_cast<std::size_t>(instances));
        parallel_for(static_cast<std::size_t>(instances), threads,
                     [&](std::size_t i) {
            const std::uint64_t key =
                (static_cast<std::uint64_t>(row.degree) << 32) | i;
            GraphGenerator gg = gen;
            gg.kind = GraphKind::k_regular;
            gg.degree = row.degree;
            gg.seed = derive_seed(gen.seed, "gw-cmp", key);
            const WeightedGraph g = generate(gg);
            const double max_cut = max_cut_bruteforce(g).value;

            GwCompareInstance& inst = row.per_instance[i];
            if (max_cut <= 0.0) {  // degenerate all-zero weights
                inst = {1.0, 1.0, 1.0};
                return;
            }
            OptimizerConfig oc = opt_cfg;
            oc.seed = derive_seed(gg.seed, "grad-run");
            double best_alpha = 0.0;
            for (const RunRecord& rec :
                 optimize_ansatz(g, classical_ansatz(g.n), oc))
                best_alpha = std::max(best_alpha, rec.alpha);

            GwConfig gc = gw_cfg;
            gc.seed = derive_seed(gg.seed, "gw-run");
            const GwResult gw = gw_maxcut(g, gc);

            inst.alpha_grad = best_alpha;
            inst.alpha_gw = gw.value / max_cut;
            inst.ratio = inst.alpha_grad / std::max(inst.alpha_gw, 1e-12);
        });

        double mean = 0.0;
        for (const GwCompareInstance& inst : row.per_instance)
            mean += inst.ratio;
        mean /= static_cast<double>(instances);
        double var = 0.0;
        for (const GwCompareInstance& inst : row.per_instance)
            var += (inst.ratio - mean) * (inst.ratio - mean);
        var /= static_cast<double>(instances);
        row.mean_ratio = mean;
        row.std_ratio = std::sqrt(var);
    }
    return rows;
}

}  // namespace cutscape
