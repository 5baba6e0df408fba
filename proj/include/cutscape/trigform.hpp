#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cutscape/ansatz.hpp"
#include "cutscape/graph.hpp"

namespace cutscape {

// Closed-form objective machinery for commuting X families started from
// |0...0>. Conjugating Z_a Z_b through the circuit leaves
//   J = sum_e w_e sum_{K in kernels(e)} (-1)^(|K|/2)
//       prod_{j in K} sin(2 theta_j) prod_{j in C_e \ K} cos(2 theta_j),
// where C_e lists the generators whose mask cuts edge e and a kernel is a
// subset of C_e whose masks XOR to zero. Everything here is real arithmetic.

// Kernel subsets are enumerated; past this |C_e| the 2^|C| space is refused
// (the underlying minimum-distance question is intractable in general).
inline constexpr int kKernelEnumCapDefault = 20;
// At or below this size a plain incremental scan beats the split-and-match
// enumeration.
inline constexpr int kKernelPlainScanMax = 12;

struct EdgeCutSet {
    int a = 0;
    int b = 0;
    double w = 0.0;
    std::vector<int> members;  // generator indices with |mask & {a,b}| = 1
};

struct KernelFamily {
    int a = 0;
    int b = 0;
    double w = 0.0;
    int cut_size = 0;  // |C| for this edge
    // Each kernel as a bitmask over positions of the edge's cut set
    // (bit i <-> members[i]), sorted ascending; 0 (the empty set) is first.
    std::vector<std::uint64_t> kernels;
};

struct STCoefficients {
    int k = 0;
    double s = 0.0;
    double t = 0.0;
};

// Precomputed per-(graph, ansatz) structure; theta-dependent evaluations
// reuse it.
struct TrigForm {
    int n = 0;
    int param_count = 0;
    std::vector<EdgeCutSet> cut_sets;
    std::vector<KernelFamily> families;
};

// Rejects non-X generators and the |+...+> start (the derivation needs Z
// eigenstates); enforces the enumeration cap per edge.
std::vector<EdgeCutSet> cut_sets(const WeightedGraph& g, const Ansatz& a);
KernelFamily kernel_sets(const EdgeCutSet& cut, const Ansatz& a,
                         int cap = kKernelEnumCapDefault);

TrigForm build_trigform(const WeightedGraph& g, const Ansatz& a,
                        int cap = kKernelEnumCapDefault);

double objective_closed_form(const TrigForm& tf, std::span<const double> theta);
double objective_closed_form(const WeightedGraph& g, const Ansatz& a,
                             std::span<const double> theta,
                             int cap = kKernelEnumCapDefault);

// J = cos(2 theta_k) s + sin(2 theta_k) t + (theta_k-independent rest), so
// dJ/dtheta_k = 2[-sin * s + cos * t] and d2J/dtheta_k^2 = -4[cos*s + sin*t].
STCoefficients st_coefficients(const TrigForm& tf, std::span<const double> theta,
                               int k);
STCoefficients st_coefficients(const WeightedGraph& g, const Ansatz& a,
                               std::span<const double> theta, int k,
                               int cap = kKernelEnumCapDefault);

// Component k = sin(2 theta_k) s_k - cos(2 theta_k) t_k; the zero vector
// exactly characterizes critical points (and equals -gradient/2).
std::vector<double> critical_condition_residual(const TrigForm& tf,
                                                std::span<const double> theta);
std::vector<double> critical_condition_residual(const WeightedGraph& g,
                                                const Ansatz& a,
                                                std::span<const double> theta,
                                                int cap = kKernelEnumCapDefault);

// Per-edge diagnostics: cut-set and kernel-family sizes.
struct EdgeKernelStat {
    int a = 0;
    int b = 0;
    double w = 0.0;
    int cut_size = 0;
    std::uint64_t kernel_count = 0;
};
std::vector<EdgeKernelStat> edge_kernel_stats(const TrigForm& tf);

}  // namespace cutscape
