#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cutscape/ansatz.hpp"
#include "cutscape/graph.hpp"
#include "cutscape/statevec.hpp"

namespace cutscape {

// Exhaustive classification of the eigenstate critical points of a commuting
// X family. Every bitstring |z> is a critical point; its Hessian is diagonal
// with entry j = 2*(E(z xor mask_j) - E(z)), so the landscape over cuts is
// read off from single-generator flips.

enum class CutClass : int {
    global_min = 0,
    global_max = 1,
    local_min = 2,
    local_max = 3,
    saddle = 4,
};
const char* cut_class_name(CutClass c);

struct CriticalPointReport {
    CutAssignment cut;
    double j_value = 0.0;             // ising energy E(z)
    std::vector<double> hessian_diag;  // one entry per generator
    CutClass classification = CutClass::saddle;
};

struct EigenstateReport {
    mask_t cut = 0;
    double j_value = 0.0;
    CutClass cls = CutClass::saddle;
    // Flip mask z ^ z_gmin: for any non-global-minimum cut, flipping this
    // set strictly lowers E, so a family containing it has no trap here.
    mask_t witness = 0;
};

struct LandscapeSummary {
    int n = 0;
    std::array<std::uint64_t, 5> counts{};  // indexed by CutClass
    std::vector<EigenstateReport> reports;  // all 2^(n-1) canonical cuts

    std::uint64_t count(CutClass c) const {
        return counts[static_cast<std::size_t>(c)];
    }
    std::uint64_t local_optima() const {
        return count(CutClass::local_min) + count(CutClass::local_max);
    }
};

// Component j = 2*(ising_energy(z ^ mask_j) - ising_energy(z)).
std::vector<double> hessian_diag_at_eigenstate(const WeightedGraph& g,
                                               const Ansatz& a, mask_t z);

// Full report for one cut (diagonal Hessian included).
CriticalPointReport classify_eigenstate(const WeightedGraph& g, const Ansatz& a,
                                        mask_t z);

// Sweeps the 2^(n-1) canonical cuts. Weak inequalities: a tie counts toward
// local-optimum candidacy, so traps are never under-reported. Global labels
// (by exact J comparison against the sweep extremes) take precedence.
LandscapeSummary classify_all_eigenstates(const WeightedGraph& g,
                                          const Ansatz& a,
                                          int cap = kBruteForceCapDefault);

// Numeric critical-point probe for optimizer terminal points.
enum class ProbeLabel : int {
    eigenstate_config = 0,  // per-coordinate sin/cos + S/T residuals vanish
    saddle_numeric = 1,     // Hessian eigenvalues of both signs
    degenerate_flagged = 2,  // near-zero eigenvalues block a sign call
    optimum_numeric = 3,
};
const char* probe_label_name(ProbeLabel l);

struct ProbeTolerances {
    double grad = 1e-6;    // required sup-norm bound on the gradient
    double case_c = 1e-6;  // eigenstate-configuration residuals
    double eig = 1e-8;     // eigenvalue sign threshold
};

struct ProbeReport {
    ProbeLabel label = ProbeLabel::degenerate_flagged;
    double grad_inf = 0.0;
    double eig_min = 0.0;  // extremal Hessian eigenvalues (0 when the
    double eig_max = 0.0;  // eigenstate test already decided)
};

// Throws input_error if the gradient exceeds tol.grad (not a critical point)
// or the ansatz is not a commuting X family.
ProbeReport probe_critical_point(const WeightedGraph& g, const Ansatz& a,
                                 std::span<const double> theta,
                                 const ProbeTolerances& tol = {});

// All eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(SymMatrix m);

}  // namespace cutscape
