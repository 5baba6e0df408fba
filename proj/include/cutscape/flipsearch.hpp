#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cutscape/ansatz.hpp"
#include "cutscape/graph.hpp"

namespace cutscape {

// Single-flip local search over the subset moves of a commuting X family:
// repeatedly replace the cut z by z ^ m for a move mask m that strictly
// increases the cut value, until no move improves. Equal-value moves are
// rejected, so the reachable terminal cuts are exactly the fixed points.

enum class FlipPolicyKind { uniform_random, first_improvement, greedy };
const char* flip_policy_name(FlipPolicyKind k);
FlipPolicyKind parse_flip_policy(const std::string& name);

struct FlipPolicy {
    FlipPolicyKind kind = FlipPolicyKind::greedy;
    std::uint64_t seed = 0;  // uniform_random draws
    // Cap on accepted flips; a run stopped by the cap that is not already at
    // a fixed point is flagged non-converged.
    std::uint64_t max_steps = std::uint64_t{1} << 20;
};

struct FlipStep {
    std::uint64_t step = 0;  // 1-based accepted-flip ordinal
    mask_t flipped = 0;      // move mask applied
    double cut_after = 0.0;  // strictly increasing along the trace
};

struct FlipResult {
    CutAssignment final;
    double cut_value = 0.0;
    std::vector<FlipStep> trace;  // accepted flips only
    std::uint64_t proposals = 0;  // single-move acceptance tests performed
    bool converged = true;        // false iff stopped by max_steps early
};

// One search from `start`. Policies:
//   uniform_random     draw moves uniformly; stop once every move has been
//                      rejected against the current cut
//   first_improvement  scan moves in list order, restart after each accept
//   greedy             take the best move each round, ties to lowest mask
// The Ansatz overload uses the family's X-string masks.
FlipResult flip_search(const WeightedGraph& g, std::span<const mask_t> masks,
                       const CutAssignment& start, const FlipPolicy& policy);
FlipResult flip_search(const WeightedGraph& g, const Ansatz& a,
                       const CutAssignment& start, const FlipPolicy& policy);

// All canonical cuts (vertex n-1 on side 0) with no strictly improving move:
// cut(z ^ m) <= cut(z) for every m, i.e. ising_energy(z ^ m) >= ising_energy(z)
// -- the same weak inequalities that define the landscape sweep's minima.
// With no masks every cut is fixed.
std::vector<CutAssignment> fixed_point_set(const WeightedGraph& g,
                                           std::span<const mask_t> masks,
                                           int cap = kBruteForceCapDefault);
std::vector<CutAssignment> fixed_point_set(const WeightedGraph& g,
                                           const Ansatz& a,
                                           int cap = kBruteForceCapDefault);

struct FlipTrialRecord {
    int trial = 0;
    mask_t start = 0;
    mask_t final = 0;
    double cut_value = 0.0;
    double alpha = 0.0;  // cut_value / brute-force optimum
    std::uint64_t steps = 0;
    bool converged = true;
};

struct FlipRunStats {
    int trials = 0;
    double optimum = 0.0;  // brute-force max cut used for alpha
    double mean_cut = 0.0;
    double mean_alpha = 0.0;
    double mean_steps = 0.0;
    std::vector<FlipTrialRecord> records;
};

// Repeated searches from uniformly random starts; per-trial RNG streams are
// derived from (seed, trial), so results are reproducible and independent of
// trial execution order.
FlipRunStats flip_trials(const WeightedGraph& g, std::span<const mask_t> masks,
                         FlipPolicyKind kind, int trials, std::uint64_t seed,
                         std::uint64_t max_steps = std::uint64_t{1} << 20);
FlipRunStats greedy_approximation_run(const WeightedGraph& g, const Ansatz& a,
                                      int trials, std::uint64_t seed);

}  // namespace cutscape
