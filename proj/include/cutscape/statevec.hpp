#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cutscape/ansatz.hpp"
#include "cutscape/graph.hpp"
#include "cutscape/kernels.hpp"
#include "cutscape/rng.hpp"

namespace cutscape {

using cplx = kernels::cplx;

// Dense simulation is capped well below the 64-bit mask limit.
inline constexpr int kDenseCapQubits = 20;
// Hessians above this parameter count are refused (M^2 memory/time).
inline constexpr int kHessianParamCapDefault = 256;

struct StateVector {
    int n = 0;
    std::vector<cplx> amp;  // 2^n amplitudes, basis index = cut mask

    std::size_t size() const { return amp.size(); }
    double norm_sq() const;
};

// Diagonal of the problem Hamiltonian sum_e w_e Z_a Z_b:
// values[z] = ising_energy(g, z) = total_weight - 2 * cut_value(g, z).
struct EnergyTable {
    int n = 0;
    std::vector<double> values;
};

EnergyTable build_energy_table(const WeightedGraph& g);

StateVector initial_state(const Ansatz& a);

// Applies e^(-i theta H) for one generator in place. `table` is required for
// problem_phase generators and ignored otherwise.
void apply_generator(StateVector& psi, const Generator& gen, double theta,
                     const EnergyTable* table = nullptr);

// Full circuit: generators applied in list order (index 0 first).
StateVector prepare(const Ansatz& a, std::span<const double> theta);
StateVector prepare(const Ansatz& a, std::span<const double> theta,
                    const EnergyTable& table);

// J = <psi| sum_e w_e Z_a Z_b |psi> = sum_z |psi_z|^2 ising_energy(z).
// Minimizing J maximizes the expected cut.
double objective(const EnergyTable& table, const StateVector& psi);
double objective(const WeightedGraph& g, const StateVector& psi);

// (J - total_weight)/2 = -expected cut; minimum over all states is -MaxCut.
double maxcut_objective(const WeightedGraph& g, const StateVector& psi);

// Exact dJ/dtheta via generator insertion: one forward pass, then a reverse
// sweep undoing gates on both <psi|H_p and |psi> so component j reads
// 2*Im <psi|H_p U_{>j} H_j U_{<=j}|phi0>. Commuting X families skip the
// reverse gates entirely (every term reduces to 2*Im <psi|H_p H_j|psi>).
std::vector<double> gradient(const EnergyTable& table, const Ansatz& a,
                             std::span<const double> theta);
std::vector<double> gradient(const WeightedGraph& g, const Ansatz& a,
                             std::span<const double> theta);

// Dense row-major symmetric matrix.
struct SymMatrix {
    int m = 0;
    std::vector<double> a;  // m*m entries

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * m + j]; }
    double at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * m + j];
    }
};

// X families: exact double-commutator entries -<[[H_p,H_j],H_k]>. Other
// families: central differences of the analytic gradient (h = 1e-4),
// symmetrized.
SymMatrix hessian(const EnergyTable& table, const Ansatz& a,
                  std::span<const double> theta,
                  int param_cap = kHessianParamCapDefault);
SymMatrix hessian(const WeightedGraph& g, const Ansatz& a,
                  std::span<const double> theta,
                  int param_cap = kHessianParamCapDefault);

// Draws a basis state with probability |psi_z|^2.
CutAssignment sample_cut(const StateVector& psi, Rng& rng);
CutAssignment sample_cut(const StateVector& psi, std::uint64_t seed);

// Best cut among basis states with |psi_z|^2 > 1e-12.
CutAssignment best_basis_cut(const WeightedGraph& g, const StateVector& psi);

// Binary dump: 16-byte header {magic "CSVEC\0", u16 n little-endian, zero
// padding}, then 2^(n+1) little-endian doubles (interleaved re/im).
void save_state(const StateVector& psi, const std::string& path);
StateVector load_state(const std::string& path);

}  // namespace cutscape
