#pragma once

// Brute-force dense-matrix model used only as a test oracle. Deliberately
// shares no code with the production kernels: gates are explicit 2^n x 2^n
// matrix exponentials (scaled-and-squared Taylor series), applied by full
// matrix-vector products.

#include <cassert>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <span>
#include <vector>

#include "cutscape/ansatz.hpp"
#include "cutscape/graph.hpp"

namespace dense_oracle {

using cplx = std::complex<double>;
using Mat = std::vector<cplx>;  // row-major dim x dim
using Vec = std::vector<cplx>;

inline Mat identity(std::size_t dim) {
    Mat m(dim * dim, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = 1.0;
    return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b, std::size_t dim) {
    Mat c(dim * dim, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            const cplx aik = a[i * dim + k];
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < dim; ++j)
                c[i * dim + j] += aik * b[k * dim + j];
        }
    return c;
}

inline Vec mat_vec(const Mat& a, const Vec& v) {
    const std::size_t dim = v.size();
    Vec out(dim, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) out[i] += a[i * dim + j] * v[j];
    return out;
}

// Hamiltonian matrix for one generator kind.
inline Mat generator_matrix(int n, const cutscape::Generator& gen,
                            const cutscape::WeightedGraph* g) {
    using cutscape::GenKind;
    const std::size_t dim = std::size_t{1} << n;
    Mat h(dim * dim, cplx(0.0, 0.0));
    switch (gen.kind) {
        case GenKind::x_string:
        case GenKind::local_x:
            for (std::size_t z = 0; z < dim; ++z)
                h[z * dim + (z ^ gen.mask)] = 1.0;
            break;
        case GenKind::z_string:
            for (std::size_t z = 0; z < dim; ++z)
                h[z * dim + z] = cutscape::parity(z & gen.mask) ? -1.0 : 1.0;
            break;
        case GenKind::global_x_mixer:
            for (int i = 0; i < n; ++i)
                for (std::size_t z = 0; z < dim; ++z)
                    h[z * dim + (z ^ cutscape::bit(i))] += 1.0;
            break;
        case GenKind::global_z_mixer:
            for (std::size_t z = 0; z < dim; ++z) {
                int pop = 0;
                for (int i = 0; i < n; ++i)
                    if (z & cutscape::bit(i)) ++pop;
                h[z * dim + z] = static_cast<double>(n - 2 * pop);
            }
            break;
        case GenKind::problem_phase:
            assert(g != nullptr);
            for (std::size_t z = 0; z < dim; ++z)
                h[z * dim + z] = cutscape::ising_energy(*g, z);
            break;
    }
    return h;
}

// exp(-i*theta*H) by scaling-and-squaring a Taylor series.
inline Mat expm_minus_i(const Mat& h, double theta, std::size_t dim) {
    Mat a(dim * dim);
    for (std::size_t i = 0; i < dim * dim; ++i)
        a[i] = cplx(0.0, -theta) * h[i];
    double norm = 0.0;  // max absolute row sum
    for (std::size_t i = 0; i < dim; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim; ++j) row += std::abs(a[i * dim + j]);
        norm = std::max(norm, row);
    }
    int squarings = 0;
    while (norm > 0.5 && squarings < 40) {
        for (auto& v : a) v *= 0.5;
        norm *= 0.5;
        ++squarings;
    }
    Mat result = identity(dim);
    Mat term = identity(dim);
    for (int k = 1; k <= 24; ++k) {
        term = mat_mul(term, a, dim);
        for (auto& v : term) v /= static_cast<double>(k);
        for (std::size_t i = 0; i < dim * dim; ++i) result[i] += term[i];
    }
    for (int s = 0; s < squarings; ++s) result = mat_mul(result, result, dim);
    return result;
}

inline Vec prepare(const cutscape::Ansatz& ansatz, std::span<const double> theta,
                   const cutscape::WeightedGraph* g) {
    const std::size_t dim = std::size_t{1} << ansatz.n;
    Vec state(dim, cplx(0.0, 0.0));
    if (ansatz.init == cutscape::InitialState::all_zeros)
        state[0] = 1.0;
    else
        for (auto& v : state) v = std::pow(2.0, -0.5 * ansatz.n);
    for (std::size_t j = 0; j < ansatz.gens.size(); ++j) {
        const Mat h = generator_matrix(ansatz.n, ansatz.gens[j], g);
        const Mat u = expm_minus_i(h, theta[j], dim);
        state = mat_vec(u, state);
    }
    return state;
}

inline double objective(const cutscape::WeightedGraph& g, const Vec& state) {
    double acc = 0.0;
    for (std::size_t z = 0; z < state.size(); ++z)
        acc += std::norm(state[z]) * cutscape::ising_energy(g, z);
    return acc;
}

}  // namespace dense_oracle
