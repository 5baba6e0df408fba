#include "cutscape/barren.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "cutscape/errors.hpp"
#include "cutscape/rng.hpp"

namespace cutscape {
namespace {

// Pairwise (cascade) summation: O(log n) error growth and a fixed addition
// tree, so the result does not depend on how callers chunk the work.
double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

double pairwise_transform_sum(const std::vector<double>& x, double shift,
                              int power) {
    std::vector<double> buf(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - shift;
        double p = d;
        for (int q = 1; q < power; ++q) p *= d;
        buf[i] = p;
    }
    return pairwise_sum(buf.data(), buf.size());
}

}  // namespace

VarianceReport variance_closed_form(const TrigForm& tf, int k) {
    if (k < 0 || k >= tf.param_count)
        throw input_error("variance: parameter index " + std::to_string(k) +
                          " out of range for M = " +
                          std::to_string(tf.param_count));
    VarianceReport rep;
    rep.k = k;
    // Edges sharing one cut set produce identical derivative monomials, so
    // their amplitudes add coherently before squaring: the group with total
    // weight W contributes 4 W^2 |K| / 2^|C|, and only groups whose cut set
    // holds k depend on theta_k at all. Per-edge rows split their group's
    // value in proportion to w_e (4 w_e W |K| / 2^|C|), keeping the rows
    // additive.
    std::map<std::vector<int>, double> group_weight;
    for (std::size_t e = 0; e < tf.cut_sets.size(); ++e) {
        const EdgeCutSet& cs = tf.cut_sets[e];
        if (std::find(cs.members.begin(), cs.members.end(), k) !=
            cs.members.end())
            group_weight[cs.members] += cs.w;
    }
    for (std::size_t e = 0; e < tf.cut_sets.size(); ++e) {
        const EdgeCutSet& cs = tf.cut_sets[e];
        if (std::find(cs.members.begin(), cs.members.end(), k) ==
            cs.members.end())
            continue;
        const KernelFamily& fam = tf.families[e];
        EdgeVarianceTerm term;
        term.a = cs.a;
        term.b = cs.b;
        term.w = cs.w;
        term.cut_size = static_cast<int>(cs.members.size());
        term.kernel_count = fam.kernels.size();
        term.contribution = 4.0 * cs.w * group_weight[cs.members] *
                            static_cast<double>(term.kernel_count) /
                            std::exp2(term.cut_size);
        rep.closed_form += term.contribution;
        rep.per_edge.push_back(term);
    }
    return rep;
}

VarianceReport variance_closed_form(const WeightedGraph& g, const Ansatz& a,
                                    int k, int cap) {
    return variance_closed_form(build_trigform(g, a, cap), k);
}

McMoments variance_monte_carlo(const TrigForm& tf, int k,
                               std::uint64_t samples, std::uint64_t seed) {
    if (k < 0 || k >= tf.param_count)
        throw input_error("variance: parameter index " + std::to_string(k) +
                          " out of range for M = " +
                          std::to_string(tf.param_count));
    if (samples < 100)
        throw input_error("variance: need at least 100 samples");

    const std::size_t m = static_cast<std::size_t>(tf.param_count);
    std::vector<double> theta(m);
    std::vector<double> grads(samples);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::uint64_t i = 0; i < samples; ++i) {
        std::uint64_t s = derive_seed(seed, "mc-theta", i);
        for (std::size_t j = 0; j < m; ++j)
            theta[j] = static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53 *
                       two_pi;
        const STCoefficients st = st_coefficients(tf, theta, k);
        grads[i] = 2.0 * (-std::sin(2.0 * theta[static_cast<std::size_t>(k)]) *
                              st.s +
                          std::cos(2.0 * theta[static_cast<std::size_t>(k)]) *
                              st.t);
    }

    McMoments mom;
    mom.samples = samples;
    const double n = static_cast<double>(samples);
    mom.mean = pairwise_sum(grads.data(), grads.size()) / n;
    const double m2 = pairwise_transform_sum(grads, mom.mean, 2) / n;
    const double m4 = pairwise_transform_sum(grads, mom.mean, 4) / n;
    mom.variance = m2 * n / (n - 1.0);  // unbiased
    mom.stderr_mean = std::sqrt(mom.variance / n);
    // Var(s^2) = (m4 - s^4 (n-3)/(n-1)) / n for i.i.d. samples.
    const double s4 = mom.variance * mom.variance;
    mom.stderr_variance =
        std::sqrt(std::max(0.0, (m4 - s4 * (n - 3.0) / (n - 1.0)) / n));
    return mom;
}

McMoments variance_monte_carlo(const WeightedGraph& g, const Ansatz& a, int k,
                               std::uint64_t samples, std::uint64_t seed) {
    return variance_monte_carlo(build_trigform(g, a), k, samples, seed);
}

VarianceReport variance_report(const WeightedGraph& g, const Ansatz& a, int k,
                               std::uint64_t samples, std::uint64_t seed,
                               int cap) {
    const TrigForm tf = build_trigform(g, a, cap);
    VarianceReport rep = variance_closed_form(tf, k);
    const McMoments mom = variance_monte_carlo(tf, k, samples, seed);
    rep.mc_estimate = mom.variance;
    rep.mc_stderr = mom.stderr_variance;
    rep.samples = mom.samples;
    return rep;
}

}  // namespace cutscape
