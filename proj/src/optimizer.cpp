#include "cutscape/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <numbers>
#include <string>

#include "cutscape/errors.hpp"
#include "cutscape/rng.hpp"
#include "cutscape/statevec.hpp"
#include "cutscape/trigform.hpp"

namespace cutscape {
namespace {

constexpr double kWolfeC1 = 1e-4;
constexpr double kWolfeC2 = 0.9;
constexpr double kAlphaMax = 1e3;
constexpr int kBracketIters = 30;
constexpr int kZoomIters = 50;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (const double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Wraps the callbacks with finiteness checks; any NaN/inf is a hard error.
struct Evaluator {
    const ObjectiveFn& f;
    const GradientFn& df;

    double value(std::span<const double> x) const {
        const double v = f(x);
        if (!std::isfinite(v))
            throw numeric_error("minimize: objective returned " +
                                std::to_string(v));
        return v;
    }
    std::vector<double> grad(std::span<const double> x) const {
        std::vector<double> g = df(x);
        for (const double v : g)
            if (!std::isfinite(v))
                throw numeric_error("minimize: gradient returned " +
                                    std::to_string(v));
        return g;
    }
};

struct HistoryPair {
    std::vector<double> s;
    std::vector<double> y;
    double rho = 0.0;
};

// Two-loop recursion: returns H*g with the usual gamma-scaled diagonal seed.
std::vector<double> apply_inverse_hessian(const std::vector<double>& g,
                                          const std::deque<HistoryPair>& hist) {
    std::vector<double> q = g;
    std::vector<double> alpha(hist.size());
    for (std::size_t i = hist.size(); i-- > 0;) {
        alpha[i] = hist[i].rho * dot(hist[i].s, q);
        for (std::size_t j = 0; j < q.size(); ++j)
            q[j] -= alpha[i] * hist[i].y[j];
    }
    if (!hist.empty()) {
        const HistoryPair& last = hist.back();
        const double yy = dot(last.y, last.y);
        if (yy > 0.0) {
            const double gamma = dot(last.s, last.y) / yy;
            for (double& v : q) v *= gamma;
        }
    }
    for (std::size_t i = 0; i < hist.size(); ++i) {
        const double beta = hist[i].rho * dot(hist[i].y, q);
        for (std::size_t j = 0; j < q.size(); ++j)
            q[j] += (alpha[i] - beta) * hist[i].s[j];
    }
    return q;
}

struct LineResult {
    bool ok = false;      // strong Wolfe conditions met at step
    double step = 0.0;    // on failure: best probed step (0 if none improved)
    double f = 0.0;
    std::vector<double> g;
};

// Strong Wolfe line search: bracket by doubling, then bisection zoom.
// On failure the best probed point is reported so the caller can still
// salvage any decrease found along the ray.
LineResult wolfe_search(const Evaluator& ev, const std::vector<double>& x,
                        const std::vector<double>& d, double f0,
                        double dphi0, double first_step) {
    std::vector<double> xt(x.size());
    std::vector<double> gt;
    double phi = 0.0;
    double best_a = 0.0;
    double best_f = f0;
    std::vector<double> best_g;
    const auto probe = [&](double a) {
        for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] + a * d[i];
        phi = ev.value(xt);
        gt = ev.grad(xt);
        if (phi < best_f) {
            best_a = a;
            best_f = phi;
            best_g = gt;
        }
        return dot(gt, d);
    };
    const auto armijo = [&](double a, double fa) {
        return fa <= f0 + kWolfeC1 * a * dphi0;
    };

    LineResult out;
    const auto zoom = [&](double lo, double f_lo, double hi) {
        for (int i = 0; i < kZoomIters; ++i) {
            const double a = 0.5 * (lo + hi);
            if (std::abs(hi - lo) <=
                1e-16 * std::max({1.0, std::abs(lo), std::abs(hi)}))
                return;  // interval collapsed without satisfying Wolfe
            const double dphi = probe(a);
            if (!armijo(a, phi) || phi >= f_lo) {
                hi = a;
            } else {
                if (std::abs(dphi) <= -kWolfeC2 * dphi0) {
                    out = {true, a, phi, gt};
                    return;
                }
                if (dphi * (hi - lo) >= 0.0) hi = lo;
                lo = a;
                f_lo = phi;
            }
        }
    };

    double a_prev = 0.0;
    double f_prev = f0;
    double a = first_step;
    for (int i = 0; i < kBracketIters && !out.ok; ++i) {
        const double dphi = probe(a);
        if (!armijo(a, phi) || (i > 0 && phi >= f_prev)) {
            zoom(a_prev, f_prev, a);
            break;
        }
        if (std::abs(dphi) <= -kWolfeC2 * dphi0) {
            out = {true, a, phi, gt};
            break;
        }
        if (dphi >= 0.0) {
            zoom(a, phi, a_prev);
            break;
        }
        if (a >= kAlphaMax) break;  // runaway direction
        a_prev = a;
        f_prev = phi;
        a = std::min(2.0 * a, kAlphaMax);
    }
    if (!out.ok) out = {false, best_a, best_f, std::move(best_g)};
    return out;
}

void check_config(const OptimizerConfig& cfg) {
    if (!(cfg.gtol > 0.0) || !(cfg.ftol > 0.0))
        throw input_error("minimize: tolerances must be positive");
    if (cfg.max_iters < 1) throw input_error("minimize: max_iters must be >= 1");
    if (cfg.memory < 1) throw input_error("minimize: memory must be >= 1");
    if (cfg.restarts < 1) throw input_error("minimize: restarts must be >= 1");
}

}  // namespace

const char* stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::gtol: return "gtol";
        case StopReason::ftol: return "ftol";
        case StopReason::max_iters: return "max_iters";
        case StopReason::line_search: return "line_search";
    }
    return "?";
}

RunRecord minimize(const ObjectiveFn& f, const GradientFn& df,
                   std::span<const double> theta0, const OptimizerConfig& cfg) {
    check_config(cfg);
    const Evaluator ev{f, df};

    std::vector<double> x(theta0.begin(), theta0.end());
    double fx = ev.value(x);
    std::vector<double> g = ev.grad(x);
    if (g.size() != x.size())
        throw input_error("minimize: gradient size does not match theta");

    std::deque<HistoryPair> hist;
    RunRecord rec;
    rec.converged_by = StopReason::max_iters;

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        if (inf_norm(g) < cfg.gtol) {
            rec.converged_by = StopReason::gtol;
            break;
        }

        std::vector<double> d = apply_inverse_hessian(g, hist);
        for (double& v : d) v = -v;
        double dphi0 = dot(g, d);
        if (!(dphi0 < 0.0)) {  // not a descent direction: reset to steepest
            hist.clear();
            for (std::size_t j = 0; j < d.size(); ++j) d[j] = -g[j];
            dphi0 = dot(g, d);
            if (!(dphi0 < 0.0)) {  // zero gradient in every direction
                rec.converged_by = StopReason::gtol;
                break;
            }
        }

        const double first_step =
            hist.empty() ? std::min(1.0, 1.0 / std::max(inf_norm(g), 1e-12))
                         : 1.0;
        const LineResult ls = wolfe_search(ev, x, d, fx, dphi0, first_step);
        if (!ls.ok) {
            if (ls.step > 0.0 && ls.f < fx) {  // salvage the best probe
                for (std::size_t j = 0; j < x.size(); ++j)
                    x[j] += ls.step * d[j];
                fx = ls.f;
                g = ls.g;
                rec.iterations = iter + 1;
            }
            rec.converged_by = StopReason::line_search;
            break;
        }

        HistoryPair pair;
        pair.s.resize(x.size());
        pair.y.resize(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            pair.s[j] = ls.step * d[j];
            pair.y[j] = ls.g[j] - g[j];
        }
        const double sy = dot(pair.s, pair.y);
        if (sy > 1e-10 * std::sqrt(dot(pair.s, pair.s)) *
                      std::sqrt(dot(pair.y, pair.y))) {
            pair.rho = 1.0 / sy;
            hist.push_back(std::move(pair));
            if (static_cast<int>(hist.size()) > cfg.memory) hist.pop_front();
        }

        const double f_prev = fx;
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += ls.step * d[j];
        fx = ls.f;
        g = ls.g;
        rec.iterations = iter + 1;

        if (f_prev - fx <=
            cfg.ftol * std::max({std::abs(f_prev), std::abs(fx), 1.0})) {
            rec.converged_by = StopReason::ftol;
            break;
        }
    }
    if (rec.converged_by == StopReason::max_iters && inf_norm(g) < cfg.gtol)
        rec.converged_by = StopReason::gtol;

    rec.theta = std::move(x);
    rec.j_final = fx;
    rec.grad_inf = inf_norm(g);
    return rec;
}

namespace {

struct Engine {
    ObjectiveFn f;
    GradientFn df;
};

// Commuting X families from |0...0> may be evaluated in closed form; use it
// when its per-gradient term count undercuts the dense statevector sweep.
Engine make_engine(const WeightedGraph& g, const Ansatz& a) {
    const double m = static_cast<double>(a.param_count());
    if (a.pure_x() && a.init == InitialState::all_zeros) {
        try {
            auto tf = std::make_shared<TrigForm>(build_trigform(g, a));
            double closed_cost = 0.0;
            for (const KernelFamily& fam : tf->families)
                closed_cost += static_cast<double>(fam.kernels.size()) *
                               (fam.cut_size + 1.0);
            const double dense_cost = (3.0 * m + 4.0) * std::exp2(a.n);
            if (closed_cost * (m + 1.0) <= dense_cost) {
                return Engine{
                    [tf](std::span<const double> t) {
                        return objective_closed_form(*tf, t);
                    },
                    [tf](std::span<const double> t) {
                        std::vector<double> grad =
                            critical_condition_residual(*tf, t);
                        for (double& v : grad) v *= -2.0;
                        return grad;
                    }};
            }
        } catch (const cap_error&) {
            // kernel enumeration refused: fall through to the dense engine
        }
    }
    auto table = std::make_shared<EnergyTable>(build_energy_table(g));
    return Engine{[table, a](std::span<const double> t) {
                      const StateVector psi = prepare(a, t, *table);
                      return objective(*table, psi);
                  },
                  [table, a](std::span<const double> t) {
                      return gradient(*table, a, t);
                  }};
}

}  // namespace

std::vector<RunRecord> optimize_ansatz(const WeightedGraph& g, const Ansatz& a,
                                       const OptimizerConfig& cfg) {
    check_config(cfg);
    g.validate();
    a.validate();
    if (a.n != g.n)
        throw input_error("optimize_ansatz: ansatz has n = " +
                          std::to_string(a.n) + ", graph has n = " +
                          std::to_string(g.n));

    const Engine engine = make_engine(g, a);
    const double total = g.total_weight();
    const double best_cut = max_cut_bruteforce(g).value;
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::vector<RunRecord> records;
    records.reserve(static_cast<std::size_t>(cfg.restarts));
    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng(derive_seed(cfg.seed, "opt-start",
                            static_cast<std::uint64_t>(r)));
        std::vector<double> theta0(
            static_cast<std::size_t>(a.param_count()));
        for (double& t : theta0) t = rng.uniform01() * two_pi;
        RunRecord rec = minimize(engine.f, engine.df, theta0, cfg);
        rec.alpha =
            best_cut > 0.0 ? ((total - rec.j_final) / 2.0) / best_cut : 1.0;
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace cutscape
