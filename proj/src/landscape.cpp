#include "cutscape/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cutscape/errors.hpp"
#include "cutscape/trigform.hpp"

namespace cutscape {

const char* cut_class_name(CutClass c) {
    switch (c) {
        case CutClass::global_min: return "global_min";
        case CutClass::global_max: return "global_max";
        case CutClass::local_min: return "local_min";
        case CutClass::local_max: return "local_max";
        case CutClass::saddle: return "saddle";
    }
    return "?";
}

const char* probe_label_name(ProbeLabel l) {
    switch (l) {
        case ProbeLabel::eigenstate_config: return "eigenstate_config";
        case ProbeLabel::saddle_numeric: return "saddle_numeric";
        case ProbeLabel::degenerate_flagged: return "degenerate_flagged";
        case ProbeLabel::optimum_numeric: return "optimum_numeric";
    }
    return "?";
}

std::vector<double> hessian_diag_at_eigenstate(const WeightedGraph& g,
                                               const Ansatz& a, mask_t z) {
    const std::vector<mask_t> masks = x_masks(a);  // rejects non-X families
    if (g.n != a.n)
        throw input_error("landscape: graph and ansatz disagree on n");
    std::vector<double> diag(masks.size());
    const double ez = ising_energy(g, z);
    for (std::size_t j = 0; j < masks.size(); ++j)
        diag[j] = 2.0 * (ising_energy(g, z ^ masks[j]) - ez);
    return diag;
}

namespace {

CutClass classify_from_diag(double ez, std::span<const double> diag,
                            double emin, double emax) {
    if (ez == emin) return CutClass::global_min;
    if (ez == emax) return CutClass::global_max;
    bool all_ge = true, all_le = true;
    for (const double d : diag) {
        if (d < 0.0) all_ge = false;
        if (d > 0.0) all_le = false;
    }
    if (all_ge) return CutClass::local_min;
    if (all_le) return CutClass::local_max;
    return CutClass::saddle;
}

}  // namespace

CriticalPointReport classify_eigenstate(const WeightedGraph& g, const Ansatz& a,
                                        mask_t z) {
    CriticalPointReport r;
    r.cut = CutAssignment{z, g.n};
    r.j_value = ising_energy(g, z);
    r.hessian_diag = hessian_diag_at_eigenstate(g, a, z);
    // Global extremes need the sweep; reuse it for consistency.
    const LandscapeSummary s = classify_all_eigenstates(g, a);
    r.classification = s.reports[canonical_cut(z, g.n)].cls;
    return r;
}

LandscapeSummary classify_all_eigenstates(const WeightedGraph& g,
                                          const Ansatz& a, int cap) {
    const std::vector<mask_t> masks = x_masks(a);
    if (g.n != a.n)
        throw input_error("landscape: graph and ansatz disagree on n");
    if (g.n > cap)
        throw cap_error("landscape: 2^" + std::to_string(g.n - 1) +
                        " cuts exceed the enumeration cap " +
                        std::to_string(cap));
    // Precomputed spectrum; indexing replaces per-flip edge sums.
    std::vector<double> energy;
    if (g.n <= kDenseCapQubits) {
        energy = build_energy_table(g).values;
    } else {
        energy.resize(std::size_t{1} << g.n);
        for (std::size_t z = 0; z < energy.size(); ++z)
            energy[z] = ising_energy(g, z);
    }

    const std::uint64_t half = std::uint64_t{1} << (g.n - 1);
    double emin = energy[0], emax = energy[0];
    for (std::uint64_t z = 0; z < half; ++z) {
        emin = std::min(emin, energy[z]);
        emax = std::max(emax, energy[z]);
    }
    std::uint64_t zmin = 0;
    for (std::uint64_t z = 0; z < half; ++z)
        if (energy[z] == emin) {
            zmin = z;
            break;
        }

    LandscapeSummary s;
    s.n = g.n;
    s.reports.resize(half);
    std::vector<double> diag(masks.size());
    for (std::uint64_t z = 0; z < half; ++z) {
        const double ez = energy[z];
        for (std::size_t j = 0; j < masks.size(); ++j)
            diag[j] = 2.0 * (energy[z ^ masks[j]] - ez);
        const CutClass cls = classify_from_diag(ez, diag, emin, emax);
        s.reports[z] = {static_cast<mask_t>(z), ez, cls,
                        canonical_cut(z ^ zmin, g.n)};
        ++s.counts[static_cast<std::size_t>(cls)];
    }
    return s;
}

ProbeReport probe_critical_point(const WeightedGraph& g, const Ansatz& a,
                                 std::span<const double> theta,
                                 const ProbeTolerances& tol) {
    const TrigForm tf = build_trigform(g, a);  // rejects non-X families
    const EnergyTable table = build_energy_table(g);

    ProbeReport r;
    for (const double gj : gradient(table, a, theta))
        r.grad_inf = std::max(r.grad_inf, std::abs(gj));
    if (r.grad_inf >= tol.grad)
        throw input_error(
            "probe_critical_point: gradient sup-norm " +
            std::to_string(r.grad_inf) + " exceeds " + std::to_string(tol.grad) +
            "; not a critical point");

    bool eigenstate = true;
    for (int k = 0; k < a.param_count() && eigenstate; ++k) {
        const STCoefficients st = st_coefficients(tf, theta, k);
        const double s2 = std::sin(2.0 * theta[k]);
        const double c2 = std::cos(2.0 * theta[k]);
        const bool sin_branch =
            std::abs(s2) < tol.case_c && std::abs(st.t) < tol.case_c;
        const bool cos_branch =
            std::abs(c2) < tol.case_c && std::abs(st.s) < tol.case_c;
        if (!sin_branch && !cos_branch) eigenstate = false;
    }
    if (eigenstate) {
        r.label = ProbeLabel::eigenstate_config;
        return r;
    }

    const SymMatrix h = hessian(table, a, theta);
    const std::vector<double> eig = symmetric_eigenvalues(h);
    r.eig_min = eig.front();
    r.eig_max = eig.back();
    if (r.eig_min < -tol.eig && r.eig_max > tol.eig) {
        r.label = ProbeLabel::saddle_numeric;
    } else if (std::abs(r.eig_min) <= tol.eig || std::abs(r.eig_max) <= tol.eig) {
        // A commuting-family critical point off the eigenstate grid is a
        // saddle in exact arithmetic; flat spectra only get flagged here.
        r.label = ProbeLabel::degenerate_flagged;
    } else {
        r.label = ProbeLabel::optimum_numeric;
    }
    return r;
}

std::vector<double> symmetric_eigenvalues(SymMatrix m) {
    const int dim = m.m;
    std::vector<double> eig(static_cast<std::size_t>(dim));
    if (dim == 0) return eig;
    // Cyclic Jacobi sweeps; fine for the few-hundred-parameter matrices here.
    double scale = 0.0;
    for (const double v : m.a) scale += v * v;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < dim; ++p)
            for (int q = p + 1; q < dim; ++q) off += m.at(p, q) * m.at(p, q);
        if (off <= scale * 1e-30) break;
        for (int p = 0; p < dim; ++p) {
            for (int q = p + 1; q < dim; ++q) {
                const double apq = m.at(p, q);
                if (apq == 0.0) continue;
                const double app = m.at(p, p);
                const double aqq = m.at(q, q);
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) +
                                  std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int i = 0; i < dim; ++i) {
                    const double aip = m.at(i, p);
                    const double aiq = m.at(i, q);
                    m.at(i, p) = c * aip - s * aiq;
                    m.at(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < dim; ++i) {
                    const double api = m.at(p, i);
                    const double aqi = m.at(q, i);
                    m.at(p, i) = c * api - s * aqi;
                    m.at(q, i) = s * api + c * aqi;
                }
            }
        }
    }
    for (int i = 0; i < dim; ++i) eig[static_cast<std::size_t>(i)] = m.at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace cutscape
