#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cutscape/ansatz.hpp"
#include "cutscape/graph.hpp"

namespace cutscape {

struct OptimizerConfig {
    double gtol = 1e-6;  // stop when the gradient sup-norm drops below this
    double ftol = 1e-5;  // stop on relative objective decrease below this
    int max_iters = 1000;
    int memory = 10;  // limited-memory history length (= M recovers BFGS)
    int restarts = 1;
    std::uint64_t seed = 0;
};

enum class StopReason { gtol, ftol, max_iters, line_search };
const char* stop_reason_name(StopReason r);

struct RunRecord {
    std::vector<double> theta;
    double j_final = 0.0;
    double grad_inf = 0.0;  // gradient sup-norm at theta
    int iterations = 0;
    StopReason converged_by = StopReason::max_iters;
    double alpha = 0.0;  // (total_weight - j_final)/2 over the exact max cut

    // line_search means the search returned its best iterate without meeting
    // either tolerance; max_iters means the budget ran out first.
    bool clean() const {
        return converged_by == StopReason::gtol ||
               converged_by == StopReason::ftol;
    }
};

using ObjectiveFn = std::function<double(std::span<const double>)>;
using GradientFn = std::function<std::vector<double>(std::span<const double>)>;

// Limited-memory quasi-Newton minimization with a strong-Wolfe line search
// (c1 = 1e-4, c2 = 0.9). Accepted iterates never increase the objective.
// Throws numeric_error if the objective or gradient returns a non-finite
// value.
RunRecord minimize(const ObjectiveFn& f, const GradientFn& df,
                   std::span<const double> theta0, const OptimizerConfig& cfg);

// Independent restarts from theta0 ~ U[0, 2pi)^M with per-restart derived
// seeds; alpha is computed against the brute-force maximum cut. Commuting X
// families whose closed form is cheaper than dense simulation are evaluated
// through it; everything else runs on the statevector engine (the two agree
// to 1e-9 and the choice is deterministic per input).
std::vector<RunRecord> optimize_ansatz(const WeightedGraph& g, const Ansatz& a,
                                       const OptimizerConfig& cfg);

}  // namespace cutscape
