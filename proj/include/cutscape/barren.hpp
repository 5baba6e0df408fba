#pragma once

#include <cstdint>
#include <vector>

#include "cutscape/ansatz.hpp"
#include "cutscape/graph.hpp"
#include "cutscape/trigform.hpp"

namespace cutscape {

// Gradient statistics over uniformly random angles, theta ~ U[0, 2pi)^M.
// For a commuting X family the mean of every gradient component is zero.
// Edges with the same cut set C produce identical derivative monomials, so
// grouping edges by cut set (group weight W_G = sum of its w_e),
//   Var(dJ/dtheta_k) = 4 * sum_{groups G with k in C_G} W_G^2 |K_G| / 2^|C_G|;
// distinct cut sets contribute independently, and the ratio |K|/2^|C|
// decides whether gradients flatten out as the family grows.

struct EdgeVarianceTerm {
    int a = 0;
    int b = 0;
    double w = 0.0;
    int cut_size = 0;                // |C_e|
    std::uint64_t kernel_count = 0;  // |K_e|
    double contribution = 0.0;       // 4 w_e W_G |K| / 2^|C|; rows sum to Var
};

struct VarianceReport {
    int k = 0;  // parameter index
    double closed_form = 0.0;
    double mc_estimate = 0.0;  // sample variance (0 until MC is run)
    double mc_stderr = 0.0;    // stderr of the variance estimate
    std::uint64_t samples = 0;
    std::vector<EdgeVarianceTerm> per_edge;  // edges whose cut set holds k
};

// Closed form only. Requires a commuting X family; kernel enumeration obeys
// the trigform cap.
VarianceReport variance_closed_form(const WeightedGraph& g, const Ansatz& a,
                                    int k, int cap = kKernelEnumCapDefault);
VarianceReport variance_closed_form(const TrigForm& tf, int k);

struct McMoments {
    std::uint64_t samples = 0;
    double mean = 0.0;
    double stderr_mean = 0.0;
    double variance = 0.0;         // unbiased sample variance
    double stderr_variance = 0.0;  // fourth-moment (non-normality aware)
};

// Draws samples of the analytic gradient component k at counter-seeded
// random angles: sample i derives its angles from (seed, i) alone, so any
// partition of the index range across workers reproduces the same stream.
// Moments are accumulated with pairwise summation. samples must be >= 100.
McMoments variance_monte_carlo(const WeightedGraph& g, const Ansatz& a, int k,
                               std::uint64_t samples, std::uint64_t seed);
McMoments variance_monte_carlo(const TrigForm& tf, int k,
                               std::uint64_t samples, std::uint64_t seed);

// Closed form plus Monte Carlo in one report.
VarianceReport variance_report(const WeightedGraph& g, const Ansatz& a, int k,
                               std::uint64_t samples, std::uint64_t seed,
                               int cap = kKernelEnumCapDefault);

}  // namespace cutscape
