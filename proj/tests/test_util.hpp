#pragma once

// Shared randomized-input builders and finite-difference oracles for tests.

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <vector>

#include "cutscape/ansatz.hpp"
#include "cutscape/graph.hpp"
#include "cutscape/rng.hpp"

namespace test_util {

using cutscape::Ansatz;
using cutscape::Edge;
using cutscape::mask_t;
using cutscape::Rng;
using cutscape::WeightedGraph;

// Erdos-Renyi-style graph with weights in [lo, hi]; guarantees >= 1 edge.
inline WeightedGraph random_graph(Rng& rng, int n, double edge_prob = 0.5,
                                  double lo = 0.0, double hi = 5.0) {
    WeightedGraph g;
    g.n = n;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.uniform01() < edge_prob)
                g.edges.push_back({a, b, rng.uniform(lo, hi)});
    if (g.edges.empty() && n >= 2) g.edges.push_back({0, 1, rng.uniform(lo, hi)});
    return g;
}

// Random commuting-X ansatz: m distinct non-complementary masks with
// popcount <= max_weight.
inline Ansatz random_x_ansatz(Rng& rng, int n, int m, int max_weight = 0) {
    if (max_weight <= 0) max_weight = n;
    Ansatz a;
    a.n = n;
    a.init = cutscape::InitialState::all_zeros;
    std::set<mask_t> used;
    const mask_t full = cutscape::full_mask(n);
    int guard = 0;
    while (static_cast<int>(a.gens.size()) < m && ++guard < 100000) {
        mask_t mask = rng.next_u64() & full;
        mask = cutscape::canonical_cut(mask, n);
        if (mask == 0 || std::popcount(mask) > max_weight) continue;
        if (used.count(mask)) continue;
        used.insert(mask);
        a.gens.push_back({cutscape::GenKind::x_string, mask});
    }
    std::sort(a.gens.begin(), a.gens.end(),
              [](const cutscape::Generator& x, const cutscape::Generator& y) {
                  const int px = std::popcount(x.mask);
                  const int py = std::popcount(y.mask);
                  return px != py ? px < py : x.mask < y.mask;
              });
    return a;
}

inline std::vector<double> random_theta(Rng& rng, int m, double lo = 0.0,
                                        double hi = 2.0 * std::numbers::pi) {
    std::vector<double> t(static_cast<std::size_t>(m));
    for (double& v : t) v = rng.uniform(lo, hi);
    return t;
}

// Central finite differences of a scalar function of theta.
inline std::vector<double> fd_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> theta, double h = 1e-5) {
    std::vector<double> grad(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        const double orig = theta[j];
        theta[j] = orig + h;
        const double fp = f(theta);
        theta[j] = orig - h;
        const double fm = f(theta);
        theta[j] = orig;
        grad[j] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

// Second central differences (full symmetric Hessian of f).
inline std::vector<double> fd_hessian(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> theta, double h = 1e-4) {
    const std::size_t m = theta.size();
    std::vector<double> hess(m * m, 0.0);
    const double f0 = f(theta);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j; k < m; ++k) {
            double v = 0.0;
            if (j == k) {
                const double orig = theta[j];
                theta[j] = orig + h;
                const double fp = f(theta);
                theta[j] = orig - h;
                const double fm = f(theta);
                theta[j] = orig;
                v = (fp - 2.0 * f0 + fm) / (h * h);
            } else {
                const double oj = theta[j];
                const double ok = theta[k];
                theta[j] = oj + h;
                theta[k] = ok + h;
                const double fpp = f(theta);
                theta[k] = ok - h;
                const double fpm = f(theta);
                theta[j] = oj - h;
                theta[k] = ok + h;
                const double fmp = f(theta);
                theta[k] = ok - h;
                const double fmm = f(theta);
                theta[j] = oj;
                theta[k] = ok;
                v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            }
            hess[j * m + k] = v;
            hess[k * m + j] = v;
        }
    }
    return hess;
}

}  // namespace test_util
