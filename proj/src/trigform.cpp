#include "cutscape/trigform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

#include "cutscape/errors.hpp"

namespace cutscape {

namespace {

void require_x_family(const Ansatz& a) {
    if (!a.pure_x())
        throw input_error(
            "trigform: closed form needs a commuting X family; mixed "
            "generator kinds go through the statevector path");
    if (a.init != InitialState::all_zeros)
        throw input_error(
            "trigform: closed form is derived for the |0...0> start");
}

// All subsets of C whose masks XOR to zero, by direct scan over 2^|C|
// subsets with an incremental XOR table.
std::vector<std::uint64_t> kernels_plain(const std::vector<mask_t>& masks) {
    const std::size_t count = std::size_t{1} << masks.size();
    std::vector<mask_t> xors(count);
    std::vector<std::uint64_t> out;
    out.push_back(0);
    xors[0] = 0;
    for (std::size_t sub = 1; sub < count; ++sub) {
        const int low = std::countr_zero(sub);
        xors[sub] = xors[sub & (sub - 1)] ^ masks[static_cast<std::size_t>(low)];
        if (xors[sub] == 0) out.push_back(sub);
    }
    return out;
}

// Split C into halves, bucket partial XORs of the low half, and match each
// high-half XOR against the buckets. Equality of XORs means the combined
// subset cancels.
std::vector<std::uint64_t> kernels_split(const std::vector<mask_t>& masks) {
    const int total = static_cast<int>(masks.size());
    const int lo_bits = total / 2;
    const int hi_bits = total - lo_bits;
    std::unordered_map<mask_t, std::vector<std::uint64_t>> lo_by_xor;
    lo_by_xor.reserve(std::size_t{1} << lo_bits);
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << lo_bits); ++sub) {
        mask_t x = 0;
        for (int i = 0; i < lo_bits; ++i)
            if (sub & (std::uint64_t{1} << i)) x ^= masks[i];
        lo_by_xor[x].push_back(sub);
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << hi_bits); ++sub) {
        mask_t x = 0;
        for (int i = 0; i < hi_bits; ++i)
            if (sub & (std::uint64_t{1} << i)) x ^= masks[lo_bits + i];
        const auto it = lo_by_xor.find(x);
        if (it == lo_by_xor.end()) continue;
        for (const std::uint64_t lo : it->second)
            out.push_back(lo | (sub << lo_bits));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<EdgeCutSet> cut_sets(const WeightedGraph& g, const Ansatz& a) {
    require_x_family(a);
    if (g.n != a.n)
        throw input_error("trigform: graph and ansatz disagree on n");
    std::vector<EdgeCutSet> out;
    out.reserve(g.edges.size());
    for (const Edge& e : g.edges) {
        EdgeCutSet cs;
        cs.a = e.a;
        cs.b = e.b;
        cs.w = e.w;
        const mask_t endpoints = bit(e.a) | bit(e.b);
        for (std::size_t j = 0; j < a.gens.size(); ++j)
            if (std::popcount(a.gens[j].mask & endpoints) == 1)
                cs.members.push_back(static_cast<int>(j));
        out.push_back(std::move(cs));
    }
    return out;
}

KernelFamily kernel_sets(const EdgeCutSet& cut, const Ansatz& a, int cap) {
    require_x_family(a);
    const int csize = static_cast<int>(cut.members.size());
    if (csize > cap)
        throw cap_error("trigform: cut set of edge (" + std::to_string(cut.a) +
                        "," + std::to_string(cut.b) + ") has " +
                        std::to_string(csize) + " members; enumerating 2^" +
                        std::to_string(csize) +
                        " subsets exceeds the cap of " + std::to_string(cap));
    std::vector<mask_t> masks;
    masks.reserve(cut.members.size());
    for (const int j : cut.members)
        masks.push_back(a.gens[static_cast<std::size_t>(j)].mask);

    KernelFamily fam;
    fam.a = cut.a;
    fam.b = cut.b;
    fam.w = cut.w;
    fam.cut_size = csize;
    fam.kernels = csize <= kKernelPlainScanMax ? kernels_plain(masks)
                                               : kernels_split(masks);
    return fam;
}

TrigForm build_trigform(const WeightedGraph& g, const Ansatz& a, int cap) {
    TrigForm tf;
    tf.n = g.n;
    tf.param_count = a.param_count();
    tf.cut_sets = cut_sets(g, a);
    tf.families.reserve(tf.cut_sets.size());
    for (const EdgeCutSet& cs : tf.cut_sets)
        tf.families.push_back(kernel_sets(cs, a, cap));
    return tf;
}

namespace {

void check_theta(const TrigForm& tf, std::span<const double> theta) {
    if (theta.size() != static_cast<std::size_t>(tf.param_count))
        throw input_error("trigform: parameter vector length mismatch");
}

// prod over K of sin, over C\K of cos; excl < 0 keeps all positions, else
// position excl is skipped (used to factor out theta_k).
double kernel_product(const EdgeCutSet& cs, std::uint64_t kernel,
                      const std::vector<double>& sin2t,
                      const std::vector<double>& cos2t, int excl = -1) {
    double p = 1.0;
    for (std::size_t i = 0; i < cs.members.size(); ++i) {
        if (static_cast<int>(i) == excl) continue;
        const std::size_t j = static_cast<std::size_t>(cs.members[i]);
        p *= (kernel >> i) & 1u ? sin2t[j] : cos2t[j];
    }
    return p;
}

double kernel_sign(std::uint64_t kernel) {
    return (std::popcount(kernel) / 2) % 2 == 0 ? 1.0 : -1.0;
}

struct Angles {
    std::vector<double> sin2t, cos2t;
};

Angles make_angles(std::span<const double> theta) {
    Angles ang;
    ang.sin2t.resize(theta.size());
    ang.cos2t.resize(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        ang.sin2t[j] = std::sin(2.0 * theta[j]);
        ang.cos2t[j] = std::cos(2.0 * theta[j]);
    }
    return ang;
}

}  // namespace

double objective_closed_form(const TrigForm& tf, std::span<const double> theta) {
    check_theta(tf, theta);
    const Angles ang = make_angles(theta);
    double j = 0.0;
    for (std::size_t e = 0; e < tf.families.size(); ++e) {
        const EdgeCutSet& cs = tf.cut_sets[e];
        double edge_sum = 0.0;
        for (const std::uint64_t kernel : tf.families[e].kernels)
            edge_sum += kernel_sign(kernel) *
                        kernel_product(cs, kernel, ang.sin2t, ang.cos2t);
        j += cs.w * edge_sum;
    }
    return j;
}

double objective_closed_form(const WeightedGraph& g, const Ansatz& a,
                             std::span<const double> theta, int cap) {
    return objective_closed_form(build_trigform(g, a, cap), theta);
}

STCoefficients st_coefficients(const TrigForm& tf,
                               std::span<const double> theta, int k) {
    check_theta(tf, theta);
    if (k < 0 || k >= tf.param_count)
        throw input_error("trigform: parameter index out of range");
    const Angles ang = make_angles(theta);
    STCoefficients st;
    st.k = k;
    for (std::size_t e = 0; e < tf.families.size(); ++e) {
        const EdgeCutSet& cs = tf.cut_sets[e];
        const auto pos_it =
            std::find(cs.members.begin(), cs.members.end(), k);
        if (pos_it == cs.members.end()) continue;  // edge feeds V_k only
        const int pos = static_cast<int>(pos_it - cs.members.begin());
        for (const std::uint64_t kernel : tf.families[e].kernels) {
            const double contrib =
                cs.w * kernel_sign(kernel) *
                kernel_product(cs, kernel, ang.sin2t, ang.cos2t, pos);
            if ((kernel >> pos) & 1u)
                st.t += contrib;
            else
                st.s += contrib;
        }
    }
    return st;
}

STCoefficients st_coefficients(const WeightedGraph& g, const Ansatz& a,
                               std::span<const double> theta, int k, int cap) {
    return st_coefficients(build_trigform(g, a, cap), theta, k);
}

std::vector<double> critical_condition_residual(
    const TrigForm& tf, std::span<const double> theta) {
    check_theta(tf, theta);
    std::vector<double> res(theta.size(), 0.0);
    for (int k = 0; k < tf.param_count; ++k) {
        const STCoefficients st = st_coefficients(tf, theta, k);
        res[static_cast<std::size_t>(k)] =
            std::sin(2.0 * theta[k]) * st.s - std::cos(2.0 * theta[k]) * st.t;
    }
    return res;
}

std::vector<double> critical_condition_residual(const WeightedGraph& g,
                                                const Ansatz& a,
                                                std::span<const double> theta,
                                                int cap) {
    return critical_condition_residual(build_trigform(g, a, cap), theta);
}

std::vector<EdgeKernelStat> edge_kernel_stats(const TrigForm& tf) {
    std::vector<EdgeKernelStat> out;
    out.reserve(tf.families.size());
    for (const KernelFamily& fam : tf.families)
        out.push_back({fam.a, fam.b, fam.w, fam.cut_size,
                       static_cast<std::uint64_t>(fam.kernels.size())});
    return out;
}

}  // namespace cutscape
