#include "cutscape/statevec.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "cutscape/errors.hpp"

namespace cutscape {

namespace {

void check_dims(const Ansatz& a, std::span<const double> theta) {
    if (a.n < 1 || a.n > kDenseCapQubits)
        throw input_error("statevec: qubit count " + std::to_string(a.n) +
                          " outside dense range [1, " +
                          std::to_string(kDenseCapQubits) + "]");
    if (theta.size() != static_cast<std::size_t>(a.param_count()))
        throw input_error("statevec: parameter vector length " +
                          std::to_string(theta.size()) + " != generator count " +
                          std::to_string(a.param_count()));
}

void check_state_dims(int n, const StateVector& psi, const char* what) {
    if (psi.n != n || psi.amp.size() != (std::size_t{1} << n))
        throw input_error(std::string("statevec: ") + what +
                          ": state dimension mismatch");
}

bool needs_energy_table(const Ansatz& a) {
    for (const Generator& g : a.gens)
        if (g.kind == GenKind::problem_phase) return true;
    return false;
}

// Inner product <bra|H|ket> for a single generator's Hamiltonian, imaginary
// part only (all a gradient needs).
double insertion_im(const StateVector& bra, const StateVector& ket,
                    const Generator& gen, const EnergyTable* table) {
    const auto& k = kernels::active();
    const std::size_t size = bra.amp.size();
    switch (gen.kind) {
        case GenKind::x_string:
        case GenKind::local_x:
            return k.xinsert_im(bra.amp.data(), ket.amp.data(), size, gen.mask);
        case GenKind::z_string:
            return k.zparity_insert_im(bra.amp.data(), ket.amp.data(), size,
                                       gen.mask);
        case GenKind::global_x_mixer: {
            double acc = 0.0;
            for (int i = 0; i < bra.n; ++i)
                acc += k.xinsert_im(bra.amp.data(), ket.amp.data(), size,
                                    bit(i));
            return acc;
        }
        case GenKind::global_z_mixer:
            return kernels::popcount_insert_im(bra.amp.data(), ket.amp.data(),
                                               size, bra.n);
        case GenKind::problem_phase:
            return k.diag_insert_im(bra.amp.data(), ket.amp.data(),
                                    table->values.data(), size);
    }
    return 0.0;
}

}  // namespace

double StateVector::norm_sq() const {
    double acc = 0.0;
    for (const cplx& a : amp) acc += a.real() * a.real() + a.imag() * a.imag();
    return acc;
}

EnergyTable build_energy_table(const WeightedGraph& g) {
    if (g.n > kDenseCapQubits)
        throw input_error("statevec: graph order over dense cap");
    EnergyTable t;
    t.n = g.n;
    t.values.assign(std::size_t{1} << g.n, 0.0);
    // One pass per edge beats one pass per state for the sparse graphs here.
    for (const Edge& e : g.edges) {
        const mask_t ma = bit(e.a);
        const mask_t mb = bit(e.b);
        for (std::size_t z = 0; z < t.values.size(); ++z)
            t.values[z] += (((z & ma) != 0) != ((z & mb) != 0)) ? -e.w : e.w;
    }
    return t;
}

StateVector initial_state(const Ansatz& a) {
    StateVector psi;
    psi.n = a.n;
    psi.amp.assign(std::size_t{1} << a.n, cplx(0.0, 0.0));
    if (a.init == InitialState::all_zeros) {
        psi.amp[0] = cplx(1.0, 0.0);
    } else {
        const double amp0 = std::pow(2.0, -0.5 * a.n);
        for (cplx& v : psi.amp) v = cplx(amp0, 0.0);
    }
    return psi;
}

void apply_generator(StateVector& psi, const Generator& gen, double theta,
                     const EnergyTable* table) {
    const auto& k = kernels::active();
    const std::size_t size = psi.amp.size();
    switch (gen.kind) {
        case GenKind::x_string:
        case GenKind::local_x:
            k.apply_x_rotation(psi.amp.data(), size, gen.mask, std::cos(theta),
                               std::sin(theta));
            break;
        case GenKind::z_string:
            k.apply_zparity_phase(psi.amp.data(), size, gen.mask,
                                  cplx(std::cos(theta), -std::sin(theta)),
                                  cplx(std::cos(theta), std::sin(theta)));
            break;
        case GenKind::global_x_mixer:
            for (int i = 0; i < psi.n; ++i)
                k.apply_x_rotation(psi.amp.data(), size, bit(i),
                                   std::cos(theta), std::sin(theta));
            break;
        case GenKind::global_z_mixer: {
            std::vector<cplx> factors(static_cast<std::size_t>(psi.n) + 1);
            for (int p = 0; p <= psi.n; ++p) {
                const double ang = theta * (psi.n - 2 * p);
                factors[p] = cplx(std::cos(ang), -std::sin(ang));
            }
            kernels::apply_popcount_phase(psi.amp.data(), size,
                                          factors.data());
            break;
        }
        case GenKind::problem_phase:
            if (table == nullptr || table->n != psi.n)
                throw input_error(
                    "statevec: problem_phase generator needs a matching "
                    "energy table");
            kernels::apply_diag_phase(psi.amp.data(), size,
                                      table->values.data(), theta);
            break;
    }
}

StateVector prepare(const Ansatz& a, std::span<const double> theta) {
    check_dims(a, theta);
    if (needs_energy_table(a))
        throw input_error(
            "statevec: ansatz contains problem_phase generators; supply the "
            "graph's energy table");
    StateVector psi = initial_state(a);
    for (std::size_t j = 0; j < a.gens.size(); ++j)
        apply_generator(psi, a.gens[j], theta[j], nullptr);
    return psi;
}

StateVector prepare(const Ansatz& a, std::span<const double> theta,
                    const EnergyTable& table) {
    check_dims(a, theta);
    if (table.n != a.n)
        throw input_error("statevec: energy table dimension mismatch");
    StateVector psi = initial_state(a);
    for (std::size_t j = 0; j < a.gens.size(); ++j)
        apply_generator(psi, a.gens[j], theta[j], &table);
    return psi;
}

double objective(const EnergyTable& table, const StateVector& psi) {
    check_state_dims(table.n, psi, "objective");
    return kernels::active().weighted_prob_sum(psi.amp.data(), psi.amp.size(),
                                               table.values.data());
}

double objective(const WeightedGraph& g, const StateVector& psi) {
    return objective(build_energy_table(g), psi);
}

double maxcut_objective(const WeightedGraph& g, const StateVector& psi) {
    return (objective(g, psi) - g.total_weight()) / 2.0;
}

std::vector<double> gradient(const EnergyTable& table, const Ansatz& a,
                             std::span<const double> theta) {
    check_dims(a, theta);
    if (table.n != a.n)
        throw input_error("statevec: energy table dimension mismatch");
    const int m = a.param_count();
    std::vector<double> grad(static_cast<std::size_t>(m), 0.0);
    if (m == 0) return grad;

    StateVector ket = prepare(a, theta, table);
    StateVector bra = ket;  // becomes H_p |psi>
    for (std::size_t z = 0; z < bra.amp.size(); ++z)
        bra.amp[z] *= table.values[z];

    if (a.pure_x()) {
        // All generators commute, so every insertion acts on the final state.
        for (int j = 0; j < m; ++j)
            grad[j] = 2.0 * insertion_im(bra, ket, a.gens[j], &table);
        return grad;
    }

    // Reverse sweep: after handling generator j, undo gate j on both states
    // so the next insertion sees U_{>j-1} ... on the bra side implicitly.
    for (int j = m - 1; j >= 0; --j) {
        grad[j] = 2.0 * insertion_im(bra, ket, a.gens[j], &table);
        if (j > 0) {
            apply_generator(bra, a.gens[j], -theta[j], &table);
            apply_generator(ket, a.gens[j], -theta[j], &table);
        }
    }
    return grad;
}

std::vector<double> gradient(const WeightedGraph& g, const Ansatz& a,
                             std::span<const double> theta) {
    return gradient(build_energy_table(g), a, theta);
}

SymMatrix hessian(const EnergyTable& table, const Ansatz& a,
                  std::span<const double> theta, int param_cap) {
    check_dims(a, theta);
    const int m = a.param_count();
    if (m > param_cap)
        throw cap_error("statevec: hessian parameter count " +
                        std::to_string(m) + " over cap " +
                        std::to_string(param_cap));
    SymMatrix h;
    h.m = m;
    h.a.assign(static_cast<std::size_t>(m) * m, 0.0);
    if (m == 0) return h;

    if (a.pure_x()) {
        // d2J/dt_j dt_k = -<[[H_p, X_j], X_k]> = -2 Re T1 + 2 Re T2 with
        // T1 = <psi|H_p X_j X_k|psi>, T2 = <psi|X_j H_p X_k|psi>.
        const StateVector psi = prepare(a, theta, table);
        const std::vector<mask_t> masks = x_masks(a);
        for (int j = 0; j < m; ++j) {
            for (int k = j; k < m; ++k) {
                const cplx t1 = kernels::diag_cross(
                    psi.amp.data(), psi.amp.data(), table.values.data(),
                    psi.amp.size(), 0, masks[j] ^ masks[k]);
                const cplx t2 = kernels::diag_cross(
                    psi.amp.data(), psi.amp.data(), table.values.data(),
                    psi.amp.size(), masks[j], masks[k]);
                const double v = -2.0 * t1.real() + 2.0 * t2.real();
                h.at(j, k) = v;
                h.at(k, j) = v;
            }
        }
        return h;
    }

    // Central differences of the analytic gradient, then symmetrize.
    const double step = 1e-4;
    std::vector<double> shifted(theta.begin(), theta.end());
    for (int j = 0; j < m; ++j) {
        shifted[j] = theta[j] + step;
        const std::vector<double> gp = gradient(table, a, shifted);
        shifted[j] = theta[j] - step;
        const std::vector<double> gm = gradient(table, a, shifted);
        shifted[j] = theta[j];
        for (int k = 0; k < m; ++k)
            h.at(j, k) = (gp[k] - gm[k]) / (2.0 * step);
    }
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
            const double v = 0.5 * (h.at(j, k) + h.at(k, j));
            h.at(j, k) = v;
            h.at(k, j) = v;
        }
    return h;
}

SymMatrix hessian(const WeightedGraph& g, const Ansatz& a,
                  std::span<const double> theta, int param_cap) {
    return hessian(build_energy_table(g), a, theta, param_cap);
}

CutAssignment sample_cut(const StateVector& psi, Rng& rng) {
    const double u = rng.uniform01() * psi.norm_sq();
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t z = 0; z < psi.amp.size(); ++z) {
        const double p = psi.amp[z].real() * psi.amp[z].real() +
                         psi.amp[z].imag() * psi.amp[z].imag();
        if (p == 0.0) continue;
        acc += p;
        last = z;
        if (u < acc) return CutAssignment{static_cast<mask_t>(z), psi.n};
    }
    return CutAssignment{static_cast<mask_t>(last), psi.n};
}

CutAssignment sample_cut(const StateVector& psi, std::uint64_t seed) {
    Rng rng(seed);
    return sample_cut(psi, rng);
}

CutAssignment best_basis_cut(const WeightedGraph& g, const StateVector& psi) {
    check_state_dims(g.n, psi, "best_basis_cut");
    double best_val = -1.0;
    mask_t best = 0;
    for (std::size_t z = 0; z < psi.amp.size(); ++z) {
        const double p = psi.amp[z].real() * psi.amp[z].real() +
                         psi.amp[z].imag() * psi.amp[z].imag();
        if (p <= 1e-12) continue;
        const double v = cut_value(g, static_cast<mask_t>(z));
        if (v > best_val) {
            best_val = v;
            best = static_cast<mask_t>(z);
        }
    }
    return CutAssignment{best, psi.n};
}

void save_state(const StateVector& psi, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("statevec: cannot open " + path);
    char header[16] = {};
    std::memcpy(header, "CSVEC\0", 6);
    header[6] = static_cast<char>(psi.n & 0xff);
    header[7] = static_cast<char>((psi.n >> 8) & 0xff);
    out.write(header, sizeof header);
    // Doubles are written assuming a little-endian host (x86/aarch64).
    for (const cplx& a : psi.amp) {
        const double re = a.real();
        const double im = a.imag();
        out.write(reinterpret_cast<const char*>(&re), sizeof re);
        out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
    if (!out) throw input_error("statevec: write failed for " + path);
}

StateVector load_state(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("statevec: cannot open " + path);
    char header[16] = {};
    in.read(header, sizeof header);
    if (!in || std::memcmp(header, "CSVEC\0", 6) != 0)
        throw input_error("statevec: bad state file header in " + path);
    const int n = static_cast<unsigned char>(header[6]) |
                  (static_cast<unsigned char>(header[7]) << 8);
    if (n < 1 || n > kDenseCapQubits)
        throw input_error("statevec: state file qubit count out of range");
    StateVector psi;
    psi.n = n;
    psi.amp.assign(std::size_t{1} << n, cplx(0.0, 0.0));
    for (cplx& a : psi.amp) {
        double re = 0.0, im = 0.0;
        in.read(reinterpret_cast<char*>(&re), sizeof re);
        in.read(reinterpret_cast<char*>(&im), sizeof im);
        a = cplx(re, im);
    }
    if (!in) throw input_error("statevec: truncated state file " + path);
    return psi;
}

}  // namespace cutscape
