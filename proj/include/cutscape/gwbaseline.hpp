#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cutscape/graph.hpp"
#include "cutscape/optimizer.hpp"

namespace cutscape {

// Classical MaxCut baseline: the semidefinite relaxation
//   maximize sum_e w_e (1 - v_a . v_b) / 2   over unit vectors v_a,
// solved in low-rank (Burer-Monteiro) form by projected gradient ascent on
// the product of spheres, then rounded with random hyperplanes.

struct GwConfig {
    int rank = 0;              // 0 picks ceil(sqrt(2n)), never below 2
    int descent_iters = 500;   // ascent iteration budget
    int rounding_trials = 100; // hyperplanes drawn; best rounded cut wins
    std::uint64_t seed = 0;
};

struct GwResult {
    CutAssignment cut;         // canonical best rounded cut
    double value = 0.0;        // cut_value(cut), never the relaxation value
    double relaxation = 0.0;   // final ascent objective (upper-bound diagnostic)
    int iterations = 0;        // ascent iterations actually taken
    bool converged = true;     // false: budget hit while far from stationary
};

// Rounds the best iterate even when the ascent fails to converge (flagged).
// Rounding trials are seeded by counter, so a longer trial budget extends the
// shorter one and the best-of value can only improve.
GwResult gw_maxcut(const WeightedGraph& g, const GwConfig& cfg = {});

struct GwCompareInstance {
    double alpha_grad = 0.0;   // classical ansatz + gradient optimizer
    double alpha_gw = 0.0;     // rounded baseline, same exact denominator
    double ratio = 0.0;        // alpha_grad / alpha_gw
};

struct GwCompareRow {
    int degree = 0;
    double mean_ratio = 0.0;
    double std_ratio = 0.0;    // population std over instances
    std::vector<GwCompareInstance> per_instance;
};

// Regular graphs of each listed degree, `instances` draws per degree; both
// methods score against the brute-force maximum, so gen.n must stay within
// the brute-force cap. Deterministic in gen.seed; instances run in parallel
// across `threads`.
std::vector<GwCompareRow> compare_grad_vs_gw(const GraphGenerator& gen,
                                             std::span<const int> degrees,
                                             int instances,
                                             const OptimizerConfig& opt_cfg = {},
                                             const GwConfig& gw_cfg = {},
                                             int threads = 1);

}  // namespace cutscape
